#include "qwire/numerics/spectral.hpp"

#include <algorithm>
#include <sstream>

#include "qwire/errors.hpp"

namespace qwire::numerics {

cplx discriminant(const Mat2& m) {
  const cplx tr = m.trace();
  return tr * tr - 4.0 * m.determinant();
}

Mat2 Spectral2::reconstruct() const {
  return eigenvalues[0] * projectors[0] + eigenvalues[1] * projectors[1];
}

Spectral2 spectral2(const Mat2& m, double degeneracy_tol) {
  return spectral2(m, std::sqrt(discriminant(m)), degeneracy_tol);
}

Spectral2 spectral2(const Mat2& m, cplx sqrt_discriminant, double degeneracy_tol) {
  if (!m.allFinite()) throw Error(ErrorKind::invalid_argument, "matrix has non-finite entries");
  const cplx tr = m.trace();
  const double scale = std::max({1.0, m.cwiseAbs().maxCoeff()});
  if (std::abs(sqrt_discriminant) <= degeneracy_tol * scale) {
    std::ostringstream os;
    os << "eigenvalues coincide: |l1 - l2| = " << std::abs(sqrt_discriminant);
    throw Error(ErrorKind::degenerate_spectrum, os.str());
  }
  Spectral2 s;
  s.eigenvalues = {0.5 * (tr + sqrt_discriminant), 0.5 * (tr - sqrt_discriminant)};
  const Mat2 id = Mat2::Identity();
  // (m - l2)(m - l1) = 0, so these are the rank-one spectral projectors.
  s.projectors[0] = (m - s.eigenvalues[1] * id) / sqrt_discriminant;
  s.projectors[1] = (s.eigenvalues[0] * id - m) / sqrt_discriminant;
  return s;
}

}  // namespace qwire::numerics
