#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "qwire/funceq/funceq.hpp"
#include "qwire/numerics/poly.hpp"
#include "qwire/numerics/quadrature.hpp"
#include "qwire/numerics/spectral.hpp"

namespace qwire::curve {

using funceq::ScaledCouplings;
using funceq::Symmetry;
using model::ScatteringParams;

/// Recorded conventions, echoed in every machine-readable output.
inline constexpr std::string_view kBlockConvention = "n1=lower-right(g3,g2);n2=upper-left(g1,g4)";
inline constexpr std::string_view kJumpConvention = "g0(x+i0)/g0(x-i0)=lambda+(x);X(x+i0)=N(x)X(x-i0)";

enum class Sheet { plus = 1, minus = -1 };

inline double sign(Sheet s) { return s == Sheet::plus ? 1.0 : -1.0; }

struct SheetPoint {
  cplx z;
  Sheet sheet = Sheet::plus;
};

/// K^2 = inner polynomial of block `which`, a palindromic polynomial in z^4.
struct CurveSpec {
  int which = 1;
  ScaledCouplings couplings;
  numerics::ComplexPoly inner;
};

/// Throws DegenerateCouplings when gamma or Gamma vanishes.
CurveSpec curve_build(const ScatteringParams& params, double k, int which);

struct Cut {
  cplx u;
  cplx v;
};

/// The 16 roots of the inner polynomial and the 8 straight cuts joining them.
/// Roots are grouped in orbits {h, ih, -h, -ih}; within an orbit, taking h
/// with arg h in [0, pi/2), the cuts are [h, ih] and [-h, -ih].
struct BranchSet {
  std::vector<cplx> points;
  std::vector<Cut> cuts;
  double max_residual = 0.0;  // max |P(h)| / (max|c| (1+|h|)^16)
};

BranchSet branch_points(const CurveSpec& spec);

/// True when the open segment (u, v) meets the half-axis [0, inf).
bool cut_meets_halfaxis(const Cut& cut);

double distance_to_cut(const Cut& cut, cplx z);

/// K(z, +) = prod_i (z - u_i) sqrt((z - v_i)/(z - u_i)) with the principal
/// square root: continuous off the cuts, K(z, +)/z^8 -> 1 at infinity, and
/// K(z, -) = -K(z, +). Throws OnCut within 1e-12 (1 + |z|) of a cut, except
/// within 1e3 times that of its endpoints, where K vanishes.
cplx curve_value(const BranchSet& branches, SheetPoint p);

/// Analytic continuation of K along a polyline, stepping so the value changes
/// by less than 10% per step and choosing the root of K^2 = P nearest the
/// previous value. Throws NoConvergence when it cannot step (at a branch point).
cplx continue_branch(const CurveSpec& spec, std::span<const cplx> path, cplx start_value);

/// Continuation of K(., +) from the point 1e4 exp(i theta), where K/z^8 ~ 1,
/// radially to |z| exp(i theta) and then along the circle |.| = |z| to z.
cplx continue_from_infinity(const CurveSpec& spec, cplx z, double theta);

/// A block of the plus-sector product with its two-sheeted eigenstructure.
class CurveContext {
 public:
  CurveContext(const ScatteringParams& params, double k, int which);

  const ScatteringParams& params() const { return params_; }
  double k() const { return k_; }
  int which() const { return spec_.which; }
  const CurveSpec& spec() const { return spec_; }
  const BranchSet& branches() const { return branches_; }

  Mat2 block(cplx z) const;
  cplx curve(SheetPoint p) const { return curve_value(branches_, p); }
  /// Square root of the block discriminant carried by the sheet:
  /// c z^2 (1 -+ z^4) gamma_k Gamma_k K(z, s) / p_i(z), c = i 8 sqrt2 (block 1) or 8 sqrt2 (block 2).
  cplx sqrt_discriminant(SheetPoint p) const;
  cplx lambda(SheetPoint p) const;
  /// Spectral pair with eigenvalues[0] = lambda(p).
  numerics::Spectral2 eigen(SheetPoint p) const;

  /// Branch points on (0, inf).
  std::vector<double> axis_branch_points() const;
  /// Points of (0, inf) where the two eigenvalues coincide: the branch points,
  /// and z = 1 for block 1 where the factor 1 - z^4 vanishes.
  std::vector<double> axis_degenerate_points() const;
  /// Positive zeros of p_i, where one eigenvalue has a pole and the other a zero.
  std::vector<double> axis_singular_points() const;

 private:
  ScatteringParams params_;
  double k_;
  CurveSpec spec_;
  BranchSet branches_;
};

struct SheetEigen {
  cplx lambda;
  Mat2 projector;
  numerics::Spectral2 spectral;
};

SheetEigen eigen_on_sheet(const ScatteringParams& params, double k, SheetPoint p, int which);

/// Errors are on the log scale, |log ratio - ln lambda_+| with the branch of
/// ln lambda_+ picked by the extrapolated ratio; to first order they equal
/// |ratio / lambda_+ - 1|, which is reported as ratio_error.
struct JumpCheck {
  double x = 0.0;
  cplx lambda;                           // lambda_+(x)
  std::array<cplx, 3> log_ratio_ladder;  // E(x + i eps) - E(x - i eps) per ladder step
  cplx log_ratio;                        // extrapolated
  std::array<double, 3> error_ladder;
  double error = 0.0;                    // extrapolated
  double ratio_error = 0.0;              // |exp(log_ratio) / lambda - 1|
};

/// g0(z, s) = exp(s E(z)), E(z) = K(z,+)/(2 pi i) int_0^inf ln lambda_+(t) / (K(t,+)(t - z)) dt.
/// ln lambda_+ is continued along the axis from its principal value at 0+;
/// across a zero or pole of order m on the axis the path passes above it and
/// the phase changes by -m pi.
class G0 {
 public:
  explicit G0(const CurveContext& ctx, numerics::QuadratureSpec spec = {}, double guard = 1e-4);

  const CurveContext& context() const { return ctx_; }
  cplx log_lambda(double t) const;
  cplx integrand(double t) const;
  cplx exponent(cplx z) const;
  cplx value(SheetPoint p) const;
  /// Exponents at x +- i eps over the ladder, and their extrapolations.
  numerics::PlemeljLimits boundary_exponents(double x) const;
  JumpCheck jump(double x) const;
  /// X(z) = g0(z,+) Lambda_+(z) + g0(z,-) Lambda_-(z).
  Mat2 generating_solution(cplx z) const;
  /// ||X(x+i0) - N(x) X(x-i0)|| / ||X(x+i0)|| from extrapolated boundary values.
  double jump_mismatch(double x) const;

  /// Points on the axis where ln lambda_+ is singular, with their orders.
  const std::vector<std::pair<double, int>>& singularities() const { return singular_; }
  std::vector<double> breakpoints() const;

 private:
  struct Node {
    double t;
    cplx lambda;
    double phase;
  };
  void prescan();
  void check_guard(cplx z) const;
  Mat2 assemble(cplx exponent, cplx z) const;

  CurveContext ctx_;
  numerics::QuadratureSpec spec_;
  double guard_;
  std::vector<std::pair<double, int>> singular_;
  std::vector<Node> nodes_;
  std::vector<double> breakpoints_;
};

/// Up to `count` evenly spaced points of [lo, hi] whose relative distance to
/// every degenerate or singular axis point is at least `margin`.
std::vector<double> admissible_cut_points(const G0& g0, int count, double lo = 0.25,
                                          double hi = 2.5, double margin = 0.1);

/// g0 for either sector. The minus-sector product is the identity, so there
/// g0 = 1 and X = I.
cplx g0_eval(const ScatteringParams& params, double k, int which, Symmetry sym, SheetPoint p,
             const numerics::QuadratureSpec& spec = {});

/// Relative mismatch of the boundary relation of X at x on the chosen sector.
double generating_jump_mismatch(const ScatteringParams& params, double k, int which, Symmetry sym,
                                double x, const numerics::QuadratureSpec& spec = {});

}  // namespace qwire::curve
