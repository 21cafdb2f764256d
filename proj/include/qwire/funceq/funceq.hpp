#pragma once

#include <span>

#include "qwire/model/model.hpp"
#include "qwire/numerics/poly.hpp"

namespace qwire::funceq {

using model::ScatteringParams;

/// plus / minus: the sign of the (3, 2) entry of M, i.e. the symmetric or
/// antisymmetric centre-of-mass sector.
enum class Symmetry { plus, minus };

/// gamma_k = 2 gamma / k, barrier_k = Gamma / k.
struct ScaledCouplings {
  double gamma_k = 0.0;
  double barrier_k = 0.0;
};

ScaledCouplings scale(const ScatteringParams& params, double k);

inline constexpr double kPoleTol = 1e-8;

/// M(alpha) acting on (g1, g4, g3, g2), with s = 2ik sin(alpha):
///   rows 1-2: [0 0 s/(s-Gamma) Gamma/(s-Gamma)], [0 0 Gamma/(s-Gamma) s/(s-Gamma)]
///   row 3:    [0 +-1 0 0]
///   row 4:    [(s/2+gamma)/(s/2-gamma) 0 0 0]
/// Throws PoleOfM when a denominator is below kPoleTol in magnitude.
Mat4 m_eval(const ScatteringParams& params, double k, cplx alpha, Symmetry sym);

/// Same matrix from the block form in z = exp(i alpha):
/// M = [[0, Q/q], [P/p, 0]] with p = z^2 - gamma_k z - 1, q = z^2 - barrier_k z - 1.
/// pole_tol = 0 refuses only exact zeros of p or q.
Mat4 m_eval_z(const ScaledCouplings& c, cplx z, Symmetry sym, double pole_tol = kPoleTol);

/// M_k M_{k-1} ... M_1 for factors (M_1, ..., M_k); identity for no factors.
Mat4 ordered_product(std::span<const Mat4> factors);

/// N = M(alpha + 7 pi/4) ... M(alpha + pi/4) M(alpha). The product of an even
/// number of block-anti-diagonal factors is block diagonal.
///
/// Block convention: n1 is the lower-right (g3, g2) block and n2 the
/// upper-left (g1, g4) block. With this assignment n1 carries the
/// -128 z^4 (1 - z^4)^2 discriminant prefactor and n2 the +128 z^4 (1 + z^4)^2 one.
struct IteratedMatrix {
  Mat4 n;
  Mat2 n1;
  Mat2 n2;
  cplx z;

  const Mat2& block(int which) const;
  /// Largest off-block entry relative to the largest entry.
  double off_block_mass() const;
};

IteratedMatrix n_eval(const ScatteringParams& params, double k, cplx alpha, Symmetry sym);
IteratedMatrix n_eval_z(const ScaledCouplings& c, cplx z, Symmetry sym, double pole_tol = kPoleTol);

/// p1 = prod_{j even} q(z w^j) prod_{j odd} p(z w^j), p2 with p and q swapped,
/// w = exp(i pi/4): the scalar denominators of the blocks n1, n2.
cplx block_denominator(const ScaledCouplings& c, cplx z, int which);

/// Tr^2 - 4 Det of the chosen block of the plus-sector product.
cplx discriminant_direct(const ScatteringParams& params, double k, cplx z, int which);

/// Inner degree-16 polynomial of the discriminant, in the scaled couplings:
///   1 + z^16 + (z^4 + z^12) C_i - z^8 S
///   C_1 = g^4 - G^2 (4 + G^2) + 4 g^2 (1 - 2 G^2),  C_2 = -C_1
///   S   = 4 g^2 (2 + G^4) + 2 (1 + 4 G^2 + G^4) + g^4 (2 + 4 G^2 + G^4)
/// with g = gamma_k, G = barrier_k.
numerics::ComplexPoly inner_polynomial(const ScaledCouplings& c, int which);

/// Closed form of disc(block) * p_i^2:
///   which 1: -128 z^4 (-1 + z^4)^2 g^2 G^2 P_1(z)
///   which 2: +128 z^4 ( 1 + z^4)^2 g^2 G^2 P_2(z)
cplx discriminant_closed_form(const ScatteringParams& params, double k, cplx z, int which);

}  // namespace qwire::funceq
