#pragma once

#include <array>

#include "qwire/types.hpp"

namespace qwire::numerics {

/// Spectral decomposition m = l1 P1 + l2 P2 of a non-degenerate 2x2 matrix.
/// Each projector equals v w^T / (w^T v) for right/left eigenvectors v, w.
struct Spectral2 {
  std::array<cplx, 2> eigenvalues;
  std::array<Mat2, 2> projectors;

  Mat2 reconstruct() const;
};

inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// Ordering: eigenvalues[0] = (tr + D)/2 with D the principal square root of
/// the discriminant tr^2 - 4 det.
Spectral2 spectral2(const Mat2& m, double degeneracy_tol = kDefaultDegeneracyTol);

/// Same, with the caller choosing the square root D of the discriminant.
/// eigenvalues[0] = (tr + D)/2. D is not re-signed internally.
Spectral2 spectral2(const Mat2& m, cplx sqrt_discriminant,
                    double degeneracy_tol = kDefaultDegeneracyTol);

cplx discriminant(const Mat2& m);

}  // namespace qwire::numerics
