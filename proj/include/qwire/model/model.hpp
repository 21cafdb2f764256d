#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "qwire/types.hpp"

namespace qwire::model {

/// Couplings: gamma between the particles, barrier (Gamma) between each
/// particle and the barrier. Units with hbar^2/2m = 1.
struct ScatteringParams {
  double gamma = 0.0;
  double barrier = 0.0;

  /// Both couplings nonzero (required by the curve layer, not by the rest).
  bool non_degenerate() const { return gamma != 0.0 && barrier != 0.0; }
};

void validate(const ScatteringParams& params);

/// The two momenta of the distinguished incoming component.
struct Kinematics {
  cplx k1;
  cplx k2;
  cplx energy;  // k1^2 + k2^2

  Kinematics(cplx a, cplx b) : k1(a), k2(b), energy(a * a + b * b) {}
};

/// Momentum in centre-of-mass coordinates: x along the centre of mass,
/// y along the relative coordinate.
struct WaveVector {
  cplx kx;
  cplx ky;
};

inline constexpr int kWaveCount = 8;
inline constexpr double kDegenerateKinematicsTol = 1e-9;

/// The eight reflections/exchanges of (k1, k2), index l = 1..8 stored at l-1:
/// (k1,k2) (-k1,-k2) (k1,-k2) (-k1,k2) (k2,k1) (-k2,-k1) (k2,-k1) (-k2,k1).
/// Throws DegenerateKinematics when k1 = +-k2 within tol * max(|k1|, |k2|).
std::array<WaveVector, kWaveCount> wave_set(const Kinematics& kin,
                                            double tol = kDegenerateKinematicsTol);

enum class Region { a, b };

/// Coefficients of the two wedge regions. Region A is 0 < phi < pi/4 (next to
/// the y = 0 ray), region B is pi/4 < phi < pi/2 (next to the x = 0 ray).
struct AmplitudeSet {
  std::array<cplx, kWaveCount> a{};
  std::array<cplx, kWaveCount> b{};

  cplx& at(Region r, int l) { return (r == Region::a ? a : b).at(static_cast<size_t>(l - 1)); }
  cplx at(Region r, int l) const { return (r == Region::a ? a : b).at(static_cast<size_t>(l - 1)); }
  /// Flat index 0..15: A1..A8 then B1..B8.
  cplx& flat(int i) { return i < kWaveCount ? a.at(static_cast<size_t>(i)) : b.at(static_cast<size_t>(i - kWaveCount)); }
  cplx flat(int i) const { return i < kWaveCount ? a.at(static_cast<size_t>(i)) : b.at(static_cast<size_t>(i - kWaveCount)); }
};

/// "A1".."A8", "B1".."B8" for flat index 0..15.
std::string_view amplitude_name(int flat_index);

struct WedgeField {
  AmplitudeSet amps;
  Kinematics kin;
};

/// v(x, y) = sum_l c_l exp(i k_l . (x, y)), with c = A for phi <= pi/4 and
/// c = B otherwise. Throws OutOfWedge unless x >= 0 and y >= 0.
cplx eval_field(const WedgeField& f, double x, double y);

/// Condition on the outer ray phi = pi/2.
enum class OuterBoundary { dirichlet, neumann };

/// Normalized violations of the three ray conditions at one radius:
///   interface  [d_phi v](r, pi/4) + r Gamma v(r, pi/4)   (jump taken B - A)
///   robin      d_phi v(r, 0) + r gamma v(r, 0)
///   outer      v(r, pi/2) or d_phi v(r, pi/2)
/// plus continuity of v across phi = pi/4. Each is divided by the sum of the
/// magnitudes of the terms entering it.
struct BoundaryResidual {
  double radius = 0.0;
  double interface = 0.0;
  double robin = 0.0;
  double outer = 0.0;
  double continuity = 0.0;

  double max() const;
};

std::vector<BoundaryResidual> boundary_residuals(const WedgeField& f,
                                                 const ScatteringParams& params,
                                                 OuterBoundary outer,
                                                 std::span<const double> radii);

/// Single particle on the line with barrier -Gamma delta(x), incoming from the left.
struct OneParticleScattering {
  cplx r;
  cplx t;
  double k = 0.0;
  double barrier = 0.0;

  /// exp(ikx) + r exp(-ikx) for x < 0, t exp(ikx) for x >= 0.
  cplx wavefunction(double x) const;
};

/// t = 2ik / (2ik + Gamma), r = -Gamma / (2ik + Gamma). Requires k > 0.
OneParticleScattering one_particle(double barrier, double k);

/// f1(r1) f2(r2) - f1(r2) f2(r1).
cplx assemble_antisym(const OneParticleScattering& f1, const OneParticleScattering& f2,
                      double r1, double r2);

struct FluxReport {
  double net = 0.0;    // R int Im(conj(v) d_r v) dphi over (0, pi/2)
  double gross = 0.0;  // R int sum_l |c_l e_l|^2 |Re(k_l . rhat)| dphi
};

/// Radial probability current through the arc of the given radius, composite
/// 20-point Gauss-Legendre with about n nodes per region.
FluxReport flux_through_arc(const WedgeField& f, double radius, int n = 4000);

}  // namespace qwire::model
