#include "qwire/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "qwire/errors.hpp"

namespace qwire::numerics {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kMinPanelWidth = 1e-14;

// Integrand in the panel variable u in [0, 1] for one piece.
using PanelIntegrand = std::function<cplx(double)>;

struct Panel {
  size_t piece;
  double u0, u1;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const PanelIntegrand& g, size_t piece, double u0, double u1) {
  const double center = 0.5 * (u0 + u1);
  const double half = 0.5 * (u1 - u0);
  std::array<cplx, 15> fv;
  fv[7] = g(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<size_t>(j)];
    fv[static_cast<size_t>(j)] = g(center - dx);
    fv[static_cast<size_t>(14 - j)] = g(center + dx);
  }
  cplx kron = kWgk[7] * fv[7];
  cplx gauss = kWg[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    const cplx pair = fv[static_cast<size_t>(j)] + fv[static_cast<size_t>(14 - j)];
    kron += kWgk[static_cast<size_t>(j)] * pair;
    if (j % 2 == 1) gauss += kWg[static_cast<size_t>(j / 2)] * pair;
  }
  const cplx mean = 0.5 * kron;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[static_cast<size_t>(j)] *
              (std::abs(fv[static_cast<size_t>(j)] - mean) + std::abs(fv[static_cast<size_t>(14 - j)] - mean));
  kron *= half;
  gauss *= half;
  resasc *= std::abs(half);
  double err = std::abs(kron - gauss);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return Panel{piece, u0, u1, kron, err};
}

QuadratureResult adaptive(const std::vector<PanelIntegrand>& pieces, const QuadratureSpec& spec) {
  std::priority_queue<Panel> heap;
  std::vector<Panel> frozen;
  cplx total{0.0};
  double total_err = 0.0;
  for (size_t i = 0; i < pieces.size(); ++i) {
    Panel p = gauss_kronrod(pieces[i], i, 0.0, 1.0);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  int subdivisions = static_cast<int>(pieces.size());
  while (!heap.empty()) {
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) break;
    if (subdivisions >= spec.max_subdivisions) break;
    Panel worst = heap.top();
    heap.pop();
    if (worst.u1 - worst.u0 < kMinPanelWidth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.u0 + worst.u1);
    Panel left = gauss_kronrod(pieces[worst.piece], worst.piece, worst.u0, mid);
    Panel right = gauss_kronrod(pieces[worst.piece], worst.piece, mid, worst.u1);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  for (auto& p : frozen) {
    total += p.value;
    total_err += p.error;
  }
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  if (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    std::ostringstream os;
    os << "quadrature tolerance not met: error estimate " << total_err << " after "
       << subdivisions << " subdivisions";
    throw ToleranceNotMet(os.str(), total.real(), total.imag(), total_err);
  }
  return QuadratureResult{total, total_err, subdivisions};
}

cplx checked(cplx v, double at) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os << "integrand is not finite at t = " << at;
    throw Error(ErrorKind::singularity_on_path, os.str());
  }
  return v;
}

// Cubic endpoint smoothing x = a + (b - a) (3u^2 - 2u^3).
struct Smoothing {
  double phi;        // 3u^2 - 2u^3
  double one_minus;  // 1 - phi, evaluated without cancellation
  double dphi;       // 6u(1 - u)
};

Smoothing smooth(double u) {
  const double v = 1.0 - u;
  return Smoothing{u * u * (3.0 - 2.0 * u), v * v * (1.0 + 2.0 * u), 6.0 * u * v};
}

std::vector<double> sorted_inside(std::span<const double> pts, double lo, double hi) {
  std::vector<double> out;
  for (double p : pts)
    if (std::isfinite(p) && p > lo && p < hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
    throw Error(ErrorKind::invalid_argument, "quadrature tolerances must be positive");
  if (spec.max_subdivisions < 1)
    throw Error(ErrorKind::invalid_argument, "max subdivisions must be at least 1");
  if (!(spec.tail_scale > 0.0))
    throw Error(ErrorKind::invalid_argument, "tail scale must be positive");
}

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           const QuadratureSpec& spec, std::span<const double> breakpoints) {
  validate(spec);
  if (!(b > a)) {
    if (a == b) return QuadratureResult{cplx{0.0}, 0.0, 0};
    QuadratureResult r = integrate(f, b, a, spec, breakpoints);
    r.value = -r.value;
    return r;
  }
  std::vector<double> edges{a};
  for (double p : sorted_inside(breakpoints, a, b)) edges.push_back(p);
  edges.push_back(b);
  std::vector<PanelIntegrand> pieces;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    pieces.emplace_back([&f, lo, hi](double u) {
      const Smoothing s = smooth(u);
      const double t = lo + (hi - lo) * s.phi;
      return checked(f(t), t) * ((hi - lo) * s.dphi);
    });
  }
  return adaptive(pieces, spec);
}

QuadratureResult integrate_halfline(const ComplexIntegrand& f, const QuadratureSpec& spec,
                                    std::span<const double> breakpoints) {
  validate(spec);
  const double c = spec.tail_scale;
  std::vector<double> edges{0.0};
  for (double t : sorted_inside(breakpoints, 0.0, std::numeric_limits<double>::infinity()))
    edges.push_back(t / (c + t));
  edges.push_back(1.0);
  std::vector<PanelIntegrand> pieces;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    pieces.emplace_back([&f, lo, hi, c](double u) -> cplx {
      const Smoothing sm = smooth(u);
      const double s = lo + (hi - lo) * sm.phi;
      const double one_minus_s = (1.0 - hi) + (hi - lo) * sm.one_minus;
      if (one_minus_s <= 0.0) return cplx{0.0};
      const double t = c * s / one_minus_s;
      const double jac = c / (one_minus_s * one_minus_s) * ((hi - lo) * sm.dphi);
      if (jac == 0.0) return cplx{0.0};
      const cplx v = checked(f(t), t);
      if (!std::isfinite(jac)) return cplx{0.0};
      return v * jac;
    });
  }
  return adaptive(pieces, spec);
}

QuadratureResult cauchy_halfline(const ComplexIntegrand& f, cplx z, const QuadratureSpec& spec,
                                 std::span<const double> breakpoints) {
  const double dist_floor = 1e-14 * (1.0 + std::abs(z));
  if (std::abs(z.imag()) <= dist_floor && z.real() >= -dist_floor)
    throw Error(ErrorKind::invalid_argument, "Cauchy integral evaluated on the half-axis itself");
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  if (z.real() > 0.0 && std::abs(z.imag()) < 0.5 * (1.0 + z.real())) pts.push_back(z.real());
  const auto kernel = [&f, z](double t) -> cplx {
    const cplx v = f(t);
    if (v == cplx{0.0}) return v;
    return v / (t - z);
  };
  return integrate_halfline(kernel, spec, pts);
}

cplx richardson10(const std::array<cplx, 3>& v) {
  const cplx r1a = (10.0 * v[1] - v[0]) / 9.0;
  const cplx r1b = (10.0 * v[2] - v[1]) / 9.0;
  return (100.0 * r1b - r1a) / 99.0;
}

PlemeljLimits plemelj_limit(const ComplexIntegrand& f, double x, const QuadratureSpec& spec,
                            std::span<const double> breakpoints) {
  if (!(x > 0.0)) throw Error(ErrorKind::invalid_argument, "Plemelj point must lie on (0, inf)");
  PlemeljLimits out{};
  for (size_t i = 0; i < kPlemeljLadder.size(); ++i) {
    const double eps = kPlemeljLadder[i];
    out.upper_ladder[i] = cauchy_halfline(f, cplx{x, eps}, spec, breakpoints).value;
    out.lower_ladder[i] = cauchy_halfline(f, cplx{x, -eps}, spec, breakpoints).value;
  }
  out.upper = richardson10(out.upper_ladder);
  out.lower = richardson10(out.lower_ladder);
  return out;
}

}  // namespace qwire::numerics
