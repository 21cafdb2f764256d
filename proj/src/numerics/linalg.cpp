#include "qwire/numerics/linalg.hpp"

#include <sstream>

#include "qwire/errors.hpp"

namespace qwire::numerics {

namespace {

double condition_from_r(const Eigen::MatrixXcd& r, Eigen::Index n) {
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = std::abs(r(i, i));
    hi = std::max(hi, d);
    lo = std::min(lo, d);
  }
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

void check_condition(double condition, double limit) {
  if (!(condition <= limit)) {
    std::ostringstream os;
    os << "system is singular to working precision (condition ~ " << condition << ")";
    throw SingularSystem(os.str(), condition);
  }
}

}  // namespace

DenseSolution solve_dense(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                          double condition_limit) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (rows == 0 || cols == 0 || rows > kMaxDenseSize || cols > kMaxDenseSize)
    throw Error(ErrorKind::invalid_argument, "dense system size out of range");
  if (b.size() != rows) throw Error(ErrorKind::invalid_argument, "right-hand side size mismatch");
  if (rows < cols) throw Error(ErrorKind::invalid_argument, "underdetermined system");
  if (!a.allFinite() || !b.allFinite())
    throw Error(ErrorKind::invalid_argument, "system has non-finite entries");

  DenseSolution out;
  if (rows == cols) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double anorm = a.cwiseAbs().rowwise().sum().maxCoeff();
    const Eigen::MatrixXcd inv = lu.inverse();
    const double inorm = inv.allFinite() ? inv.cwiseAbs().rowwise().sum().maxCoeff()
                                         : std::numeric_limits<double>::infinity();
    out.condition = anorm * inorm;
    check_condition(out.condition, condition_limit);
    out.x = lu.solve(b);
  } else {
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    out.condition = condition_from_r(r, cols);
    check_condition(out.condition, condition_limit);
    out.x = qr.solve(b);
  }
  const double bnorm = b.norm();
  const double rnorm = (a * out.x - b).norm();
  out.residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  return out;
}

}  // namespace qwire::numerics
