#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qwire {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr cplx kI{0.0, 1.0};

}  // namespace qwire
