#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "qwire/errors.hpp"
#include "qwire/funceq/funceq.hpp"
#include "qwire/numerics/linalg.hpp"
#include "qwire/numerics/poly.hpp"
#include "qwire/numerics/quadrature.hpp"
#include "qwire/numerics/spectral.hpp"

using namespace qwire;
using numerics::ComplexPoly;

namespace {

bool contains(const std::vector<cplx>& roots, cplx target, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](cplx r) { return std::abs(r - target) < tol; });
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("poly_roots: z^2 + 1") {
  const auto roots = numerics::poly_roots(ComplexPoly({1.0, 0.0, 1.0}));
  REQUIRE(roots.size() == 2);
  CHECK(contains(roots, kI, 1e-14));
  CHECK(contains(roots, -kI, 1e-14));
}

TEST_CASE("poly_roots: fourth roots of unity") {
  const auto roots = numerics::poly_roots(ComplexPoly({-1.0, 0.0, 0.0, 0.0, 1.0}));
  REQUIRE(roots.size() == 4);
  for (cplx w : {cplx{1.0}, kI, cplx{-1.0}, -kI}) CHECK(contains(roots, w, 1e-14));
}

TEST_CASE("poly_roots: residual bound and symmetry of a degree-16 palindromic polynomial") {
  const auto p = funceq::inner_polynomial(funceq::scale({1.0, 1.0}, 1.0), 1);
  const auto roots = numerics::poly_roots(p, 1e-12);
  REQUIRE(roots.size() == 16);
  for (cplx r : roots) {
    CHECK(std::abs(p(r)) <= numerics::root_residual_bound(p, r, 1e-12));
    CHECK(contains(roots, kI * r, 1e-8));
    CHECK(contains(roots, 1.0 / r, 1e-8));
  }
}

TEST_CASE("poly_roots: clustered triple root") {
  // (z - 1)^3: the roots are only determined to about cbrt(eps).
  const auto roots = numerics::poly_roots(ComplexPoly({-1.0, 3.0, -3.0, 1.0}), 1e-12);
  REQUIRE(roots.size() == 3);
  for (cplx r : roots) CHECK(std::abs(r - 1.0) < 1e-4);
}

TEST_CASE("poly_roots: degenerate input") {
  CHECK(kind_of([] { numerics::poly_roots(ComplexPoly({0.0, 0.0})); }) == ErrorKind::degenerate_input);
  CHECK(kind_of([] { numerics::poly_roots(ComplexPoly({2.0})); }) == ErrorKind::degenerate_input);
}

TEST_CASE("ComplexPoly drops vanishing leading coefficients") {
  const ComplexPoly p({1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(p.leading() == cplx{2.0});
  CHECK(p.reversed().coefficient(0) == cplx{2.0});
  CHECK(p.derivative()(5.0) == cplx{2.0});
}

TEST_CASE("cauchy_halfline: zero integrand") {
  const auto r = numerics::cauchy_halfline([](double) { return cplx{0.0}; }, cplx{0.3, 0.7}, {});
  CHECK(r.value == cplx{0.0});
}

TEST_CASE("cauchy_halfline: 1/(1+t^2) at z = -1") {
  // Partial fractions: int_0^inf dt / ((1+t^2)(1+t)) = pi/4.
  const auto r = numerics::cauchy_halfline([](double t) { return cplx{1.0 / (1.0 + t * t)}; }, cplx{-1.0}, {});
  CHECK(std::abs(r.value - 0.78539816339744831) < 1e-11);
}

TEST_CASE("cauchy_halfline: off-axis value against a closed form") {
  // int_0^inf e^{-t}/(t - z) dt = -e^{-z} E1(-z); checked here at z = -2 + 0i
  // where it equals e^{2} E1(2) = 0.3613286168882225.
  const auto r = numerics::cauchy_halfline([](double t) { return cplx{std::exp(-t)}; }, cplx{-2.0}, {});
  CHECK(std::abs(r.value - 0.36132861688822250) < 1e-11);
}

TEST_CASE("cauchy_halfline: rejects points on the half-axis") {
  CHECK_THROWS_AS(numerics::cauchy_halfline([](double t) { return cplx{std::exp(-t)}; }, cplx{1.0}, {}), Error);
}

TEST_CASE("cauchy_halfline: linear in the integrand") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const numerics::QuadratureSpec spec;
  for (int i = 0; i < 10; ++i) {
    const cplx a{u(rng), u(rng)}, b{u(rng), u(rng)}, z{3.0 * u(rng), 0.05 + std::abs(u(rng))};
    const auto f = [](double t) { return cplx{std::exp(-t) * std::cos(t)}; };
    const auto g = [](double t) { return cplx{1.0 / (1.0 + t * t * t)}; };
    const cplx fg = numerics::cauchy_halfline([&](double t) { return a * f(t) + b * g(t); }, z, spec).value;
    const cplx sum = a * numerics::cauchy_halfline(f, z, spec).value + b * numerics::cauchy_halfline(g, z, spec).value;
    CHECK(std::abs(fg - sum) <= 10.0 * spec.rel_tol * std::max(1.0, std::abs(sum)));
  }
}

TEST_CASE("plemelj_limit: jump of e^{-t} at x = 1") {
  const auto lim = numerics::plemelj_limit([](double t) { return cplx{std::exp(-t)}; }, 1.0, {});
  const cplx expected = 2.0 * kPi * kI * std::exp(-1.0);
  CHECK(std::abs(lim.jump() - expected) < 1e-6);
  // First-order convergence of the raw ladder, removed by extrapolation.
  double prev = 1e300;
  for (size_t i = 0; i < 3; ++i) {
    const double e = std::abs(lim.upper_ladder[i] - lim.lower_ladder[i] - expected);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(std::abs(lim.jump() - expected) < prev);
}

TEST_CASE("richardson10 removes first and second order terms") {
  const auto f = [](double e) { return cplx{2.0 + 3.0 * e - 5.0 * e * e}; };
  const cplx r = numerics::richardson10({f(1e-2), f(1e-3), f(1e-4)});
  CHECK(std::abs(r - 2.0) < 1e-13);
}

TEST_CASE("integrate: endpoint singularity and tolerance failure") {
  const auto r = numerics::integrate([](double t) { return cplx{1.0 / std::sqrt(t)}; }, 0.0, 1.0, {});
  CHECK(std::abs(r.value - 2.0) < 1e-10);
  numerics::QuadratureSpec tight;
  tight.max_subdivisions = 1;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  CHECK_THROWS_AS(numerics::integrate([](double t) { return cplx{std::sin(200.0 * t)}; }, 0.0, 1.0, tight),
                  ToleranceNotMet);
}

TEST_CASE("spectral2: diagonal") {
  Mat2 m;
  m << 2.0, 0.0, 0.0, 3.0;
  const auto s = numerics::spectral2(m);
  const bool first_is_three = std::abs(s.eigenvalues[0] - 3.0) < 1e-15;
  const int i3 = first_is_three ? 0 : 1;
  CHECK(std::abs(s.eigenvalues[static_cast<size_t>(1 - i3)] - 2.0) < 1e-15);
  Mat2 d2 = Mat2::Zero(), d3 = Mat2::Zero();
  d2(0, 0) = 1.0;
  d3(1, 1) = 1.0;
  CHECK((s.projectors[static_cast<size_t>(i3)] - d3).norm() < 1e-15);
  CHECK((s.projectors[static_cast<size_t>(1 - i3)] - d2).norm() < 1e-15);
}

TEST_CASE("spectral2: exchange matrix") {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  const auto s = numerics::spectral2(m);
  CHECK(std::abs(s.eigenvalues[0] - 1.0) < 1e-15);
  CHECK(std::abs(s.eigenvalues[1] + 1.0) < 1e-15);
  Mat2 plus, minus;
  plus << 0.5, 0.5, 0.5, 0.5;
  minus << 0.5, -0.5, -0.5, 0.5;
  CHECK((s.projectors[0] - plus).norm() < 1e-15);
  CHECK((s.projectors[1] - minus).norm() < 1e-15);
}

TEST_CASE("spectral2: identity is degenerate") {
  CHECK(kind_of([] { numerics::spectral2(Mat2::Identity()); }) == ErrorKind::degenerate_spectrum);
}

TEST_CASE("spectral2: projector identities on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    Mat2 m;
    m << cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)};
    const auto s = numerics::spectral2(m);
    const auto& [p0, p1] = s.projectors;
    CHECK((m - s.reconstruct()).norm() <= 1e-12 * m.norm());
    CHECK(std::abs(p0.trace() - 1.0) < 1e-12);
    CHECK((p0 * p0 - p0).norm() < 1e-11 * std::max(1.0, p0.norm() * p0.norm()));
    CHECK((p0 * p1).norm() < 1e-11 * std::max(1.0, p0.norm() * p1.norm()));
    const double scale = std::abs(s.eigenvalues[0]) + std::abs(s.eigenvalues[1]);
    CHECK(std::abs(s.eigenvalues[0] + s.eigenvalues[1] - m.trace()) <= 1e-12 * scale);
    CHECK(std::abs(s.eigenvalues[0] * s.eigenvalues[1] - m.determinant()) <= 1e-12 * scale * scale);
  }
}

TEST_CASE("spectral2: caller-chosen square root fixes the ordering") {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  const auto s = numerics::spectral2(m, cplx{-2.0});
  CHECK(std::abs(s.eigenvalues[0] + 1.0) < 1e-15);
}

TEST_CASE("solve_dense: identity and diagonal") {
  Eigen::VectorXcd b(2);
  b << cplx{4.0, 1.0}, cplx{6.0};
  CHECK((numerics::solve_dense(Eigen::MatrixXcd::Identity(2, 2), b).x - b).norm() == 0.0);
  Eigen::MatrixXcd d = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
  Eigen::VectorXcd b2(2);
  b2 << 4.0, 6.0;
  const auto sol = numerics::solve_dense(d, b2);
  CHECK(std::abs(sol.x[0] - 2.0) < 1e-15);
  CHECK(std::abs(sol.x[1] - 3.0) < 1e-15);
}

TEST_CASE("solve_dense: singular and oversize input") {
  Eigen::MatrixXcd s(2, 2);
  s << 1.0, 2.0, 2.0, 4.0;
  CHECK_THROWS_AS(numerics::solve_dense(s, Eigen::VectorXcd::Ones(2)), SingularSystem);
  CHECK_THROWS_AS(numerics::solve_dense(Eigen::MatrixXcd::Identity(33, 33), Eigen::VectorXcd::Ones(33)), Error);
}

}  // TEST_SUITE
