#include "qwire/errors.hpp"

namespace qwire {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::degenerate_input: return "degenerate-input";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::singularity_on_path: return "singularity-on-path";
    case ErrorKind::tolerance_not_met: return "tolerance-not-met";
    case ErrorKind::degenerate_spectrum: return "degenerate-spectrum";
    case ErrorKind::singular_system: return "singular-system";
    case ErrorKind::degenerate_kinematics: return "degenerate-kinematics";
    case ErrorKind::resonant_denominator: return "resonant-denominator";
    case ErrorKind::out_of_wedge: return "out-of-wedge";
    case ErrorKind::pole_of_m: return "pole-of-m";
    case ErrorKind::degenerate_couplings: return "degenerate-couplings";
    case ErrorKind::cut_crosses_axis: return "cut-crosses-axis";
    case ErrorKind::on_cut: return "on-cut";
    case ErrorKind::lambda_zero_on_cut: return "lambda-zero-on-cut";
    case ErrorKind::quadrature_failure: return "quadrature-failure";
  }
  return "unknown";
}

}  // namespace qwire
