#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwire/curve/curve.hpp"
#include "qwire/errors.hpp"

namespace qwire::curve {

namespace {

constexpr double kScanMin = 1e-8;
constexpr double kScanMax = 1e8;
constexpr int kScanPerDecade = 40;
constexpr double kMaxPhaseStep = 0.2;
constexpr double kSingularOffset = 1e-10;
constexpr double kBreakpointSkip = 1e-13;

double principal_step(cplx to, cplx from) { return std::arg(to / from); }

}  // namespace

G0::G0(const CurveContext& ctx, numerics::QuadratureSpec spec, double guard)
    : ctx_(ctx), spec_(spec), guard_(guard) {
  numerics::validate(spec_);
  prescan();
}

void G0::prescan() {
  const auto lam = [this](double t) { return ctx_.lambda(SheetPoint{cplx{t, 0.0}, Sheet::plus}); };

  for (double ts : ctx_.axis_singular_points()) {
    const double d1 = 1e-6 * ts;
    const double d2 = 1e-5 * ts;
    const double order = std::log(std::abs(lam(ts + d1)) / std::abs(lam(ts + d2))) / std::log(d1 / d2);
    const int m = static_cast<int>(std::lround(order));
    if (m != 0) singular_.emplace_back(ts, m);
  }

  // Coarse geometric grid plus a tight pair around every singular point.
  std::vector<double> ts;
  const int decades = static_cast<int>(std::lround(std::log10(kScanMax / kScanMin)));
  for (int i = 0; i <= decades * kScanPerDecade; ++i)
    ts.push_back(kScanMin * std::pow(10.0, static_cast<double>(i) / kScanPerDecade));
  for (const auto& [s, m] : singular_) {
    (void)m;
    ts.erase(std::remove_if(ts.begin(), ts.end(), [s = s](double t) { return std::abs(t - s) < 1e-6 * s; }),
             ts.end());
    ts.push_back(s * (1.0 - kSingularOffset));
    ts.push_back(s * (1.0 + kSingularOffset));
  }
  std::sort(ts.begin(), ts.end());

  const auto singular_between = [this](double a, double b) -> const std::pair<double, int>* {
    for (const auto& s : singular_)
      if (a < s.first && s.first < b) return &s;
    return nullptr;
  };

  nodes_.clear();
  nodes_.push_back(Node{ts[0], lam(ts[0]), std::arg(lam(ts[0]))});
  for (size_t i = 1; i < ts.size(); ++i) {
    const double b = ts[i];
    const cplx lb = lam(b);
    if (const auto* s = singular_between(nodes_.back().t, b)) {
      const int m = s->second;
      const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
      const double step = -m * kPi + principal_step(lb * sgn, nodes_.back().lambda);
      nodes_.push_back(Node{b, lb, nodes_.back().phase + step});
      continue;
    }
    // Refine the interval until every phase step is small.
    std::vector<std::pair<double, cplx>> stack{{b, lb}};
    while (!stack.empty()) {
      const auto [t, lt] = stack.back();
      const Node& last = nodes_.back();
      const double step = principal_step(lt, last.lambda);
      if (std::abs(step) > kMaxPhaseStep && t - last.t > 1e-12 * t) {
        const double mid = 0.5 * (last.t + t);
        stack.emplace_back(mid, lam(mid));
        continue;
      }
      nodes_.push_back(Node{t, lt, last.phase + step});
      stack.pop_back();
    }
  }

  breakpoints_ = ctx_.axis_branch_points();
  for (const auto& s : singular_) breakpoints_.push_back(s.first);
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

std::vector<double> G0::breakpoints() const { return breakpoints_; }

cplx G0::log_lambda(double t) const {
  const cplx l = ctx_.lambda(SheetPoint{cplx{t, 0.0}, Sheet::plus});
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t, [](double v, const Node& n) { return v < n.t; });
  size_t i = it == nodes_.begin() ? 0 : static_cast<size_t>(it - nodes_.begin()) - 1;
  if (i + 1 < nodes_.size()) {
    // Inside a singular gap, measure from the node on the same side.
    for (const auto& s : singular_)
      if (nodes_[i].t < s.first && s.first < nodes_[i + 1].t && t > s.first) ++i;
  }
  const Node& n = nodes_[i];
  return cplx{std::log(std::abs(l)), n.phase + principal_step(l, n.lambda)};
}

cplx G0::integrand(double t) const {
  for (double b : breakpoints_)
    if (std::abs(t - b) <= kBreakpointSkip * b) return cplx{0.0};
  const cplx k = ctx_.curve(SheetPoint{cplx{t, 0.0}, Sheet::plus});
  return log_lambda(t) / k;
}

void G0::check_guard(cplx z) const {
  for (const auto& s : singular_) {
    const double tol = guard_ * std::max(1.0, s.first);
    if (std::abs(z - s.first) < tol) {
      std::ostringstream os;
      os << "ln lambda_+ is singular at t = " << s.first << " on the half-axis (order " << s.second << ")";
      throw LambdaZeroOnCut(os.str(), s.first);
    }
  }
}

cplx G0::exponent(cplx z) const {
  check_guard(z);
  const auto f = [this](double t) { return integrand(t); };
  const numerics::QuadratureResult c = numerics::cauchy_halfline(f, z, spec_, breakpoints_);
  return ctx_.curve(SheetPoint{z, Sheet::plus}) * c.value / (2.0 * kPi * kI);
}

cplx G0::value(SheetPoint p) const { return std::exp(sign(p.sheet) * exponent(p.z)); }

numerics::PlemeljLimits G0::boundary_exponents(double x) const {
  if (!(x > 0.0)) throw Error(ErrorKind::invalid_argument, "boundary point must lie on (0, inf)");
  check_guard(cplx{x, 0.0});
  numerics::PlemeljLimits out{};
  for (size_t i = 0; i < numerics::kPlemeljLadder.size(); ++i) {
    const double eps = numerics::kPlemeljLadder[i];
    out.upper_ladder[i] = exponent(cplx{x, eps});
    out.lower_ladder[i] = exponent(cplx{x, -eps});
  }
  out.upper = numerics::richardson10(out.upper_ladder);
  out.lower = numerics::richardson10(out.lower_ladder);
  return out;
}

JumpCheck G0::jump(double x) const {
  const numerics::PlemeljLimits b = boundary_exponents(x);
  JumpCheck j;
  j.x = x;
  j.lambda = ctx_.lambda(SheetPoint{cplx{x, 0.0}, Sheet::plus});
  j.log_ratio = b.upper - b.lower;
  // Branch of ln lambda selected by the extrapolated ratio.
  const cplx ln = std::log(j.lambda);
  const double turns = std::round((j.log_ratio.imag() - ln.imag()) / (2.0 * kPi));
  const cplx target = ln + cplx{0.0, 2.0 * kPi * turns};
  for (size_t i = 0; i < 3; ++i) {
    j.log_ratio_ladder[i] = b.upper_ladder[i] - b.lower_ladder[i];
    j.error_ladder[i] = std::abs(j.log_ratio_ladder[i] - target);
  }
  j.error = std::abs(j.log_ratio - target);
  j.ratio_error = std::abs(std::exp(j.log_ratio) / j.lambda - 1.0);
  return j;
}

Mat2 G0::assemble(cplx e, cplx z) const {
  const numerics::Spectral2 s = ctx_.eigen(SheetPoint{z, Sheet::plus});
  return std::exp(e) * s.projectors[0] + std::exp(-e) * s.projectors[1];
}

Mat2 G0::generating_solution(cplx z) const { return assemble(exponent(z), z); }

double G0::jump_mismatch(double x) const {
  const numerics::PlemeljLimits b = boundary_exponents(x);
  const cplx at{x, 0.0};
  const numerics::Spectral2 s = ctx_.eigen(SheetPoint{at, Sheet::plus});
  // Common scale factor exp(-sigma) keeps the exponentials finite.
  const double sigma = std::max(std::abs(b.upper.real()), std::abs(b.lower.real()));
  const auto scaled = [&](cplx e) {
    return Mat2(std::exp(e - sigma) * s.projectors[0] + std::exp(-e - sigma) * s.projectors[1]);
  };
  const Mat2 upper = scaled(b.upper);
  const Mat2 lower = scaled(b.lower);
  return (upper - ctx_.block(at) * lower).norm() / upper.norm();
}

std::vector<double> admissible_cut_points(const G0& g0, int count, double lo, double hi,
                                          double margin) {
  std::vector<double> avoid = g0.context().axis_degenerate_points();
  for (const auto& [t, m] : g0.singularities()) avoid.push_back(t);
  const int candidates = 8 * std::max(count, 1);
  std::vector<double> ok;
  for (int i = 0; i <= candidates; ++i) {
    const double x = lo + (hi - lo) * i / candidates;
    const bool clear = std::all_of(avoid.begin(), avoid.end(),
                                   [&](double t) { return std::abs(x - t) >= margin * t; });
    if (clear) ok.push_back(x);
  }
  if (static_cast<int>(ok.size()) <= count) return ok;
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(ok[static_cast<size_t>(i * (ok.size() - 1) / std::max(count - 1, 1))]);
  }
  return out;
}

cplx g0_eval(const ScatteringParams& params, double k, int which, Symmetry sym, SheetPoint p,
             const numerics::QuadratureSpec& spec) {
  if (sym == Symmetry::minus) {
    // The minus-sector product is the identity: lambda_+ = 1 and ln lambda_+ = 0.
    funceq::n_eval_z(funceq::scale(params, k), p.z, sym);
    return cplx{1.0};
  }
  const G0 g(CurveContext(params, k, which), spec);
  return g.value(p);
}

double generating_jump_mismatch(const ScatteringParams& params, double k, int which, Symmetry sym, double x,
                                const numerics::QuadratureSpec& spec) {
  if (sym == Symmetry::minus) {
    const Mat4 n = funceq::n_eval_z(funceq::scale(params, k), cplx{x, 0.0}, sym).n;
    const Mat2 block = which == 1 ? Mat2(n.bottomRightCorner<2, 2>()) : Mat2(n.topLeftCorner<2, 2>());
    // X = I on both banks.
    return (Mat2::Identity() - block).norm() / Mat2::Identity().norm();
  }
  const G0 g(CurveContext(params, k, which), spec);
  return g.jump_mismatch(x);
}

}  // namespace qwire::curve
