#include "qwire/numerics/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwire/errors.hpp"

namespace qwire::numerics {

namespace {

constexpr double kAbsoluteFloor = 1e-290;
constexpr int kMaxAberthIterations = 500;

}  // namespace

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == cplx{0.0}) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(cplx{0.0});
}

cplx ComplexPoly::coefficient(int power) const {
  if (power < 0 || power > degree()) return cplx{0.0};
  return coeffs_[static_cast<size_t>(power)];
}

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (degree() == 0) return ComplexPoly{};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::reversed() const {
  std::vector<cplx> r(coeffs_.rbegin(), coeffs_.rend());
  return ComplexPoly(std::move(r));
}

double ComplexPoly::max_coefficient_magnitude() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double root_residual_bound(const ComplexPoly& p, cplx root, double tol) {
  return tol * p.max_coefficient_magnitude() *
         std::pow(1.0 + std::abs(root), static_cast<double>(p.degree()));
}

std::vector<cplx> poly_roots(const ComplexPoly& p, double tol) {
  if (p.max_coefficient_magnitude() <= kAbsoluteFloor)
    throw Error(ErrorKind::degenerate_input, "polynomial coefficients are all below the absolute floor");
  if (p.degree() < 1)
    throw Error(ErrorKind::degenerate_input, "polynomial has degree 0");
  if (std::abs(p.leading()) <= kAbsoluteFloor)
    throw Error(ErrorKind::degenerate_input, "leading coefficient underflows");

  // Exact zero roots are split off first; Aberth works on the remainder.
  auto c = p.coefficients();
  size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == cplx{0.0}) ++zeros;
  std::vector<cplx> roots(zeros, cplx{0.0});
  ComplexPoly q(std::vector<cplx>(c.begin() + static_cast<long>(zeros), c.end()));
  const int n = q.degree();
  if (n == 0) return roots;

  // Monic copy keeps the iteration well scaled.
  std::vector<cplx> monic(q.coefficients().begin(), q.coefficients().end());
  const cplx lead = monic.back();
  for (auto& v : monic) v /= lead;
  const ComplexPoly mp(monic);
  const ComplexPoly dp = mp.derivative();

  const double radius = std::pow(std::abs(monic.front()), 1.0 / n);
  std::vector<cplx> z(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n + 0.4;
    z[static_cast<size_t>(k)] = std::polar(radius * (1.0 + 0.03 * k / n), theta);
  }

  bool converged = false;
  for (int iter = 0; iter < kMaxAberthIterations && !converged; ++iter) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<size_t>(k)];
      const cplx pv = mp(zk);
      if (pv == cplx{0.0}) continue;
      const cplx ratio = pv / dp(zk);
      cplx sum{0.0};
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (zk - z[static_cast<size_t>(j)]);
      const cplx step = ratio / (1.0 - ratio * sum);
      zk -= step;
      if (std::abs(step) > 1e-14 * (1.0 + std::abs(zk))) converged = false;
    }
  }

  // Newton polish, accepted only while the residual decreases.
  for (auto& r : z) {
    for (int it = 0; it < 4; ++it) {
      const cplx pv = mp(r);
      const cplx dv = dp(r);
      if (dv == cplx{0.0}) break;
      const cplx cand = r - pv / dv;
      if (std::abs(mp(cand)) < std::abs(pv)) r = cand;
      else break;
    }
  }

  for (const auto& r : z) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) ||
        std::abs(p(r)) > root_residual_bound(p, r, tol))
      throw Error(ErrorKind::no_convergence, "root iteration did not meet the residual bound");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace qwire::numerics
