#pragma once

#include <array>
#include <functional>
#include <span>

#include "qwire/types.hpp"

namespace qwire::numerics {

struct QuadratureSpec {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
  /// Scale c of the half-line map t = c s / (1 - s).
  double tail_scale = 1.0;
};

void validate(const QuadratureSpec& spec);

struct QuadratureResult {
  cplx value;
  double error = 0.0;
  int subdivisions = 0;
};

using ComplexIntegrand = std::function<cplx(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b], with optional interior
/// breakpoints. Each piece between breakpoints is remapped with a cubic
/// endpoint-smoothing substitution so integrable algebraic or logarithmic
/// endpoint singularities are handled.
QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           const QuadratureSpec& spec,
                           std::span<const double> breakpoints = {});

/// Integral of f over (0, inf) via t = c s / (1 - s).
QuadratureResult integrate_halfline(const ComplexIntegrand& f,
                                    const QuadratureSpec& spec,
                                    std::span<const double> breakpoints = {});

/// Cauchy integral over the positive half-axis, int_0^inf f(t) / (t - z) dt.
/// Requires z off [0, inf). When z is close to the axis, Re z is added as a
/// breakpoint so the near-singular kernel is resolved.
QuadratureResult cauchy_halfline(const ComplexIntegrand& f, cplx z,
                                 const QuadratureSpec& spec,
                                 std::span<const double> breakpoints = {});

/// Offsets used for boundary-value limits and their Richardson ladder.
inline constexpr std::array<double, 3> kPlemeljLadder{1e-2, 1e-3, 1e-4};

/// Two-level Richardson extrapolation for values sampled at eps, eps/10,
/// eps/100, assuming an expansion in integer powers of eps.
cplx richardson10(const std::array<cplx, 3>& values);

struct PlemeljLimits {
  std::array<cplx, 3> upper_ladder;  // value(x + i eps) for kPlemeljLadder
  std::array<cplx, 3> lower_ladder;  // value(x - i eps)
  cplx upper;                        // extrapolated x + i0
  cplx lower;                        // extrapolated x - i0
  cplx jump() const { return upper - lower; }
};

/// Boundary values of the Cauchy integral on both banks of the half-axis.
/// The jump tends to 2 pi i f(x).
PlemeljLimits plemelj_limit(const ComplexIntegrand& f, double x,
                            const QuadratureSpec& spec,
                            std::span<const double> breakpoints = {});

}  // namespace qwire::numerics
