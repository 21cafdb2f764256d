#pragma once

#include <span>
#include <vector>

#include "qwire/types.hpp"

namespace qwire::numerics {

/// Dense complex polynomial, coefficients in ascending powers.
/// Trailing (highest-power) coefficients that vanish exactly are dropped on
/// construction, so the stored leading coefficient is nonzero unless the
/// polynomial is identically zero.
class ComplexPoly {
 public:
  ComplexPoly() : coeffs_{cplx{0.0}} {}
  explicit ComplexPoly(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coefficients() const { return coeffs_; }
  cplx coefficient(int power) const;
  cplx leading() const { return coeffs_.back(); }

  cplx operator()(cplx z) const;
  ComplexPoly derivative() const;
  /// Coefficients reversed: z^n p(1/z).
  ComplexPoly reversed() const;
  double max_coefficient_magnitude() const;

 private:
  std::vector<cplx> coeffs_;
};

/// Residual bound used as the acceptance test for a computed root.
double root_residual_bound(const ComplexPoly& p, cplx root, double tol);

/// All roots with multiplicity (Aberth-Ehrlich iteration, then Newton polish).
/// Throws DegenerateInput for (numerically) zero or constant polynomials and
/// NoConvergence when the iteration budget runs out or a root fails the
/// residual bound |p(r)| <= tol * max|c| * (1+|r|)^n.
std::vector<cplx> poly_roots(const ComplexPoly& p, double tol = 1e-12);

}  // namespace qwire::numerics
