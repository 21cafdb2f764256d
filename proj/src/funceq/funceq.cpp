#include "qwire/funceq/funceq.hpp"

#include <cmath>
#include <sstream>

#include "qwire/errors.hpp"

namespace qwire::funceq {

namespace {

const cplx kOmega = std::polar(1.0, kPi / 4.0);

void check_pole(cplx den, const char* name, double tol = kPoleTol) {
  if (std::abs(den) < tol || den == cplx{0.0}) {
    std::ostringstream os;
    os << "pole of M: denominator " << name << " = " << std::abs(den);
    throw Error(ErrorKind::pole_of_m, os.str());
  }
}

cplx p_of(const ScaledCouplings& c, cplx z) { return z * z - c.gamma_k * z - 1.0; }
cplx q_of(const ScaledCouplings& c, cplx z) { return z * z - c.barrier_k * z - 1.0; }

template <class Factor>
IteratedMatrix iterate(Factor factor, cplx z) {
  Mat4 n = Mat4::Identity();
  for (int j = 0; j < 8; ++j) {
    try {
      n = factor(j) * n;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::pole_of_m) throw;
      std::ostringstream os;
      os << e.what() << " at shift index " << j;
      throw Error(ErrorKind::pole_of_m, os.str());
    }
  }
  IteratedMatrix it;
  it.n = n;
  it.n2 = n.topLeftCorner<2, 2>();
  it.n1 = n.bottomRightCorner<2, 2>();
  it.z = z;
  return it;
}

}  // namespace

ScaledCouplings scale(const ScatteringParams& params, double k) {
  model::validate(params);
  if (!std::isfinite(k) || k == 0.0) throw Error(ErrorKind::invalid_argument, "k must be finite and nonzero");
  return ScaledCouplings{2.0 * params.gamma / k, params.barrier / k};
}

Mat4 m_eval(const ScatteringParams& params, double k, cplx alpha, Symmetry sym) {
  model::validate(params);
  const cplx s = 2.0 * kI * k * std::sin(alpha);
  const cplx h = 0.5 * s;
  const cplx d1 = s - params.barrier;
  const cplx d2 = h - params.gamma;
  check_pole(d1, "2ik sin(alpha) - Gamma");
  check_pole(d2, "ik sin(alpha) - gamma");
  Mat4 m = Mat4::Zero();
  m(0, 2) = s / d1;
  m(0, 3) = params.barrier / d1;
  m(1, 2) = params.barrier / d1;
  m(1, 3) = s / d1;
  m(2, 1) = sym == Symmetry::plus ? 1.0 : -1.0;
  m(3, 0) = (h + params.gamma) / d2;
  return m;
}

Mat4 m_eval_z(const ScaledCouplings& c, cplx z, Symmetry sym, double pole_tol) {
  const cplx p = p_of(c, z);
  const cplx q = q_of(c, z);
  check_pole(q, "q(z) = z^2 - barrier_k z - 1", pole_tol);
  check_pole(p, "p(z) = z^2 - gamma_k z - 1", pole_tol);
  Mat4 m = Mat4::Zero();
  m(0, 2) = (z * z - 1.0) / q;
  m(0, 3) = c.barrier_k * z / q;
  m(1, 2) = c.barrier_k * z / q;
  m(1, 3) = (z * z - 1.0) / q;
  m(2, 1) = sym == Symmetry::plus ? 1.0 : -1.0;  // (+-p)/p
  m(3, 0) = (z * z + c.gamma_k * z - 1.0) / p;
  return m;
}

Mat4 ordered_product(std::span<const Mat4> factors) {
  Mat4 n = Mat4::Identity();
  for (const Mat4& m : factors) n = m * n;
  return n;
}

const Mat2& IteratedMatrix::block(int which) const {
  if (which == 1) return n1;
  if (which == 2) return n2;
  throw Error(ErrorKind::invalid_argument, "block index must be 1 or 2");
}

double IteratedMatrix::off_block_mass() const {
  const double scale = n.cwiseAbs().maxCoeff();
  const double off = std::max(n.topRightCorner<2, 2>().cwiseAbs().maxCoeff(),
                              n.bottomLeftCorner<2, 2>().cwiseAbs().maxCoeff());
  return scale > 0.0 ? off / scale : 0.0;
}

IteratedMatrix n_eval(const ScatteringParams& params, double k, cplx alpha, Symmetry sym) {
  return iterate([&](int j) { return m_eval(params, k, alpha + j * kPi / 4.0, sym); }, std::exp(kI * alpha));
}

IteratedMatrix n_eval_z(const ScaledCouplings& c, cplx z, Symmetry sym, double pole_tol) {
  return iterate([&](int j) { return m_eval_z(c, z * std::pow(kOmega, j), sym, pole_tol); }, z);
}

cplx block_denominator(const ScaledCouplings& c, cplx z, int which) {
  if (which != 1 && which != 2) throw Error(ErrorKind::invalid_argument, "block index must be 1 or 2");
  cplx out{1.0};
  for (int j = 0; j < 8; ++j) {
    const cplx zj = z * std::pow(kOmega, j);
    const bool use_q = (j % 2 == 0) == (which == 1);
    out *= use_q ? q_of(c, zj) : p_of(c, zj);
  }
  return out;
}

cplx discriminant_direct(const ScatteringParams& params, double k, cplx z, int which) {
  const IteratedMatrix it = n_eval_z(scale(params, k), z, Symmetry::plus);
  const Mat2& b = it.block(which);
  const cplx tr = b.trace();
  return tr * tr - 4.0 * b.determinant();
}

numerics::ComplexPoly inner_polynomial(const ScaledCouplings& c, int which) {
  if (which != 1 && which != 2) throw Error(ErrorKind::invalid_argument, "block index must be 1 or 2");
  const double g2 = c.gamma_k * c.gamma_k;
  const double G2 = c.barrier_k * c.barrier_k;
  const double c1 = g2 * g2 - G2 * (4.0 + G2) + 4.0 * g2 * (1.0 - 2.0 * G2);
  const double mid = 4.0 * g2 * (2.0 + G2 * G2) + 2.0 * (1.0 + 4.0 * G2 + G2 * G2) + g2 * g2 * (2.0 + 4.0 * G2 + G2 * G2);
  const double side = which == 1 ? c1 : -c1;
  std::vector<cplx> coeffs(17, cplx{0.0});
  coeffs[0] = 1.0;
  coeffs[4] = side;
  coeffs[8] = -mid;
  coeffs[12] = side;
  coeffs[16] = 1.0;
  return numerics::ComplexPoly(std::move(coeffs));
}

cplx discriminant_closed_form(const ScatteringParams& params, double k, cplx z, int which) {
  const ScaledCouplings c = scale(params, k);
  const cplx z4 = std::pow(z, 4);
  const double gG = c.gamma_k * c.barrier_k;
  const cplx pref = which == 1 ? -128.0 * z4 * (z4 - 1.0) * (z4 - 1.0) : 128.0 * z4 * (z4 + 1.0) * (z4 + 1.0);
  return pref * gG * gG * inner_polynomial(c, which)(z);
}

}  // namespace qwire::funceq
