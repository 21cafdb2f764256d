#pragma once

#include "qwire/types.hpp"

namespace qwire::numerics {

struct DenseSolution {
  Eigen::VectorXcd x;
  double residual = 0.0;   // ||a x - b|| / ||b|| (0 when b = 0)
  double condition = 1.0;  // estimate
};

inline constexpr int kMaxDenseSize = 32;
inline constexpr double kDefaultConditionLimit = 1e13;

/// Solves a x = b. Square systems use LU with partial pivoting. Tall systems
/// (more rows than columns) must be consistent; they are solved by
/// column-pivoted Householder QR and the residual reports the consistency.
/// Throws SingularSystem when the condition estimate exceeds the limit.
DenseSolution solve_dense(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                          double condition_limit = kDefaultConditionLimit);

}  // namespace qwire::numerics
