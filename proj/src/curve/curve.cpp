#include "qwire/curve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwire/errors.hpp"
#include "qwire/numerics/poly.hpp"

namespace qwire::curve {

namespace {

constexpr double kCutTol = 1e-12;
constexpr double kQuadrupleTol = 1e-6;
constexpr double kRealSnap = 1e-10;

double arg_0_2pi(cplx z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * kPi;
  if (a > 2.0 * kPi - 1e-12) a = 0.0;
  return a;
}

std::vector<std::array<cplx, 4>> quadruples(std::vector<cplx> roots) {
  std::vector<bool> used(roots.size(), false);
  std::vector<std::array<cplx, 4>> out;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::array<cplx, 4> q{roots[i]};
    for (int m = 1; m < 4; ++m) {
      const cplx target = roots[i] * std::pow(kI, m);
      size_t best = roots.size();
      double best_d = 0.0;
      for (size_t j = 0; j < roots.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(roots[j] - target);
        if (best == roots.size() || d < best_d) {
          best = j;
          best_d = d;
        }
      }
      if (best == roots.size() || best_d > kQuadrupleTol * (1.0 + std::abs(target)))
        throw Error(ErrorKind::degenerate_couplings, "branch points do not split into orbits {h, ih, -h, -ih}");
      used[best] = true;
      q[static_cast<size_t>(m)] = roots[best];
    }
    // Rotate so q[0] has argument in [0, pi/2).
    std::sort(q.begin(), q.end(), [](cplx a, cplx b) { return arg_0_2pi(a) < arg_0_2pi(b); });
    out.push_back(q);
  }
  return out;
}

cplx k_plus(const BranchSet& b, cplx z) {
  cplx v{1.0};
  for (const Cut& c : b.cuts) {
    const cplx du = z - c.u;
    if (du == cplx{0.0}) return cplx{0.0};
    v *= du * std::sqrt((z - c.v) / du);
  }
  return v;
}

}  // namespace

CurveSpec curve_build(const ScatteringParams& params, double k, int which) {
  if (which != 1 && which != 2) throw Error(ErrorKind::invalid_argument, "curve index must be 1 or 2");
  const ScaledCouplings c = funceq::scale(params, k);
  if (params.gamma == 0.0 || params.barrier == 0.0)
    throw Error(ErrorKind::degenerate_couplings, "degenerate couplings: gamma and Gamma must both be nonzero");
  return CurveSpec{which, c, funceq::inner_polynomial(c, which)};
}

bool cut_meets_halfaxis(const Cut& cut) {
  const double scale = std::max(std::abs(cut.u), std::abs(cut.v));
  const double tol = kCutTol * (1.0 + scale);
  const double iu = std::abs(cut.u.imag()) <= tol ? 0.0 : cut.u.imag();
  const double iv = std::abs(cut.v.imag()) <= tol ? 0.0 : cut.v.imag();
  if (iu == 0.0 && iv == 0.0) return std::max(cut.u.real(), cut.v.real()) >= 0.0;  // lies on the axis
  if (iu * iv > 0.0) return false;
  if (iu == 0.0 || iv == 0.0) return false;  // touches the axis only at an endpoint
  const double s = iu / (iu - iv);
  return cut.u.real() + s * (cut.v.real() - cut.u.real()) >= -tol;
}

double distance_to_cut(const Cut& cut, cplx z) {
  const cplx d = cut.v - cut.u;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - cut.u);
  const double s = std::clamp(((z - cut.u) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (cut.u + s * d));
}

BranchSet branch_points(const CurveSpec& spec) {
  std::vector<cplx> roots = numerics::poly_roots(spec.inner, 1e-12);
  for (cplx& r : roots)
    if (std::abs(r.imag()) < kRealSnap * std::abs(r)) r = cplx{r.real(), 0.0};
  BranchSet b;
  for (const auto& q : quadruples(roots)) {
    Cut c1{q[0], q[1]};
    Cut c2{q[2], q[3]};
    if (cut_meets_halfaxis(c1) || cut_meets_halfaxis(c2)) {
      c1 = Cut{q[1], q[2]};
      c2 = Cut{q[3], q[0]};
      if (cut_meets_halfaxis(c1) || cut_meets_halfaxis(c2)) {
        std::ostringstream os;
        os << "no admissible cut pairing for the orbit of " << q[0];
        throw Error(ErrorKind::cut_crosses_axis, os.str());
      }
    }
    b.cuts.push_back(c1);
    b.cuts.push_back(c2);
    for (const cplx& h : q) b.points.push_back(h);
  }
  const double cmax = spec.inner.max_coefficient_magnitude();
  for (const cplx& h : b.points)
    b.max_residual = std::max(b.max_residual, std::abs(spec.inner(h)) / (cmax * std::pow(1.0 + std::abs(h), 16)));
  return b;
}

cplx curve_value(const BranchSet& branches, SheetPoint p) {
  const double tol = kCutTol * (1.0 + std::abs(p.z));
  for (const Cut& c : branches.cuts) {
    // K vanishes at the endpoints, so points next to them are not refused.
    const double end_tol = 1e3 * tol;
    if (distance_to_cut(c, p.z) < tol && std::abs(p.z - c.u) > end_tol && std::abs(p.z - c.v) > end_tol) {
      std::ostringstream os;
      os << "point " << p.z << " lies on the cut [" << c.u << ", " << c.v << "]";
      throw Error(ErrorKind::on_cut, os.str());
    }
  }
  return sign(p.sheet) * k_plus(branches, p.z);
}

cplx continue_branch(const CurveSpec& spec, std::span<const cplx> path, cplx start_value) {
  cplx value = start_value;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const cplx a = path[i];
    const cplx b = path[i + 1];
    double s = 0.0;
    double h = 1.0 / 16.0;
    while (s < 1.0) {
      h = std::min(h, 1.0 - s);
      if (h < 1e-14 || value == cplx{0.0})
        throw Error(ErrorKind::no_convergence, "continuation stalled: path runs into a branch point");
      const cplx z = a + (s + h) * (b - a);
      const cplx root = std::sqrt(spec.inner(z));
      const cplx cand = std::abs(root - value) <= std::abs(root + value) ? root : -root;
      if (std::abs(cand - value) <= 0.1 * std::abs(value)) {
        value = cand;
        s += h;
        h *= 2.0;
      } else {
        h *= 0.5;
      }
    }
  }
  return value;
}

cplx continue_from_infinity(const CurveSpec& spec, cplx z, double theta) {
  constexpr double kBase = 1e4;
  const cplx z0 = std::polar(kBase, theta);
  const cplx z8 = std::pow(z0, 8);
  const cplx start = z8 * std::sqrt(spec.inner(z0) / (z8 * z8));
  const double r = std::abs(z);
  std::vector<cplx> path{z0, std::polar(r, theta)};
  if (r > 0.0) {
    double dphi = std::arg(z) - theta;
    dphi = std::remainder(dphi, 2.0 * kPi);
    constexpr int kArcSteps = 256;
    for (int j = 1; j <= kArcSteps; ++j) path.push_back(std::polar(r, theta + dphi * j / kArcSteps));
    path.back() = z;
  }
  return continue_branch(spec, path, start);
}

CurveContext::CurveContext(const ScatteringParams& params, double k, int which)
    : params_(params), k_(k), spec_(curve_build(params, k, which)), branches_(branch_points(spec_)) {}

Mat2 CurveContext::block(cplx z) const {
  return funceq::n_eval_z(spec_.couplings, z, Symmetry::plus, 0.0).block(spec_.which);
}

cplx CurveContext::sqrt_discriminant(SheetPoint p) const {
  const cplx z = p.z;
  const cplx z4 = std::pow(z, 4);
  const double c8 = 8.0 * kSqrt2;
  const cplx pref = spec_.which == 1 ? kI * c8 * (1.0 - z4) : c8 * (1.0 + z4);
  const ScaledCouplings& c = spec_.couplings;
  return pref * z * z * c.gamma_k * c.barrier_k * curve(p) / funceq::block_denominator(c, z, spec_.which);
}

cplx CurveContext::lambda(SheetPoint p) const {
  const cplx tr = block(p.z).trace();
  const cplx d = sqrt_discriminant(p);
  const cplx mine = 0.5 * (tr + d);
  const cplx other = 0.5 * (tr - d);
  // Det = 1, so the smaller eigenvalue is the reciprocal of the larger one;
  // near a pole of the block this avoids cancelling two large numbers.
  return std::abs(mine) < std::abs(other) ? 1.0 / other : mine;
}

numerics::Spectral2 CurveContext::eigen(SheetPoint p) const {
  return numerics::spectral2(block(p.z), sqrt_discriminant(p));
}

std::vector<double> CurveContext::axis_branch_points() const {
  std::vector<double> out;
  for (const cplx& h : branches_.points)
    if (h.imag() == 0.0 && h.real() > 0.0) out.push_back(h.real());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> CurveContext::axis_degenerate_points() const {
  std::vector<double> out = axis_branch_points();
  if (spec_.which == 1) out.push_back(1.0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> CurveContext::axis_singular_points() const {
  const ScaledCouplings& c = spec_.couplings;
  const double a = spec_.which == 1 ? c.barrier_k : c.gamma_k;
  const double r = 0.5 * (a + std::sqrt(a * a + 4.0));
  std::vector<double> out{1.0 / r, r};
  std::sort(out.begin(), out.end());
  return out;
}

SheetEigen eigen_on_sheet(const ScatteringParams& params, double k, SheetPoint p, int which) {
  const CurveContext ctx(params, k, which);
  const numerics::Spectral2 s = ctx.eigen(p);
  return SheetEigen{s.eigenvalues[0], s.projectors[0], s};
}

}  // namespace qwire::curve
