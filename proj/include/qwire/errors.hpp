#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwire {

/// Failure categories shared by every module. The CLI maps these onto exit codes.
enum class ErrorKind {
  invalid_argument,
  degenerate_input,
  no_convergence,
  singularity_on_path,
  tolerance_not_met,
  degenerate_spectrum,
  singular_system,
  degenerate_kinematics,
  resonant_denominator,
  out_of_wedge,
  pole_of_m,
  degenerate_couplings,
  cut_crosses_axis,
  on_cut,
  lambda_zero_on_cut,
  quadrature_failure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Carries the best available estimate when an adaptive quadrature stops short.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, double best_re, double best_im,
                  double error_estimate)
      : Error(ErrorKind::tolerance_not_met, what),
        best_re_(best_re),
        best_im_(best_im),
        error_estimate_(error_estimate) {}

  double best_re() const noexcept { return best_re_; }
  double best_im() const noexcept { return best_im_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_re_;
  double best_im_;
  double error_estimate_;
};

/// Raised by the dense solver; carries the estimated condition number.
class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, double condition)
      : Error(ErrorKind::singular_system, what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// A singular point of the eigenvalue logarithm on the positive half-axis.
class LambdaZeroOnCut : public Error {
 public:
  LambdaZeroOnCut(const std::string& what, double location)
      : Error(ErrorKind::lambda_zero_on_cut, what), location_(location) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace qwire
