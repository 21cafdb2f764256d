#pragma once

#include <array>
#include <span>
#include <string_view>

#include "qwire/model/model.hpp"

namespace qwire::bethe {

using model::AmplitudeSet;
using model::Kinematics;
using model::Region;
using model::ScatteringParams;

/// same_side: A1 = 1, B5 = 0. opposite_side: A1 = 0, B5 = 1.
/// cluster: bound pair as a surface wave, (k1, k2) = (k, i gamma), A1 = 1, B5 = 0.
enum class IncidenceCase { same_side, opposite_side, cluster };

std::string_view to_string(IncidenceCase c);

struct Pin {
  Region region;
  int l;  // 1..8
  cplx value;
};

/// The two pinned coefficients that define an incidence case.
std::array<Pin, 2> incidence_pins(IncidenceCase c);

inline constexpr double kResonanceTol = 1e-10;

/// Closed-form amplitudes for the two plane-wave incidence cases.
/// Throws DegenerateKinematics, or ResonantDenominator naming the factor.
AmplitudeSet closed_form(const ScatteringParams& params, const Kinematics& kin, IncidenceCase c);

/// 16 x 16 matching matrix acting on (A1..A8, B1..B8): four Robin rows on
/// y = 0, four Dirichlet rows on x = 0, and for each group sharing kx + ky a
/// continuity row and a derivative-jump row on x = y.
Eigen::MatrixXcd matching_system(const ScatteringParams& params, const Kinematics& kin);

struct OracleResult {
  AmplitudeSet amps;
  double residual = 0.0;   // ||S x - b|| / ||b|| of the reduced system
  double condition = 0.0;  // condition estimate of the reduced system
};

/// Moves the pinned columns to the right-hand side and solves for the rest.
OracleResult oracle_solve(const ScatteringParams& params, const Kinematics& kin,
                          std::span<const Pin> pins);

/// Momenta of the surface-wave channel: (k, i gamma).
Kinematics cluster_kinematics(const ScatteringParams& params, double k);

/// Closed-form bound-pair amplitudes. The incoming wave exp(ikx - gamma y)
/// travels towards the barrier for k < 0. Requires gamma > 0 and real k != 0.
AmplitudeSet cluster(const ScatteringParams& params, double k);

/// Energy of the bound-pair channel, k^2 - gamma^2.
double cluster_energy(const ScatteringParams& params, double k);

/// Squared moduli. Only the antisymmetric part of the full problem is covered,
/// so these are partial weights.
struct Observables {
  double reflection = 0.0;    // |A4|^2
  double transmission = 0.0;  // |B1|^2
  std::array<double, 16> weights{};
  static constexpr std::string_view scope = "partial (v- channel only)";
};

Observables observables(const AmplitudeSet& amps, IncidenceCase c);

/// Entrywise relative mismatch max_i |x_i - y_i| / max(|y_i|, 0.01 max_j |y_j|);
/// entries far below the largest are measured against the 1% level.
double max_relative_mismatch(const AmplitudeSet& x, const AmplitudeSet& y);

}  // namespace qwire::bethe
