#include "qwire/bethe/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qwire/errors.hpp"
#include "qwire/numerics/linalg.hpp"

namespace qwire::bethe {

namespace {

struct Factor {
  const char* name;
  cplx value;
};

void check_factors(std::span<const Factor> factors, double scale) {
  for (const Factor& f : factors) {
    if (std::abs(f.value) < kResonanceTol * scale) {
      std::ostringstream os;
      os << "resonant denominator: factor " << f.name << " vanishes (|.| = " << std::abs(f.value) << ")";
      throw Error(ErrorKind::resonant_denominator, os.str());
    }
  }
}

double natural_scale(const ScatteringParams& p, cplx k1, cplx k2) {
  return std::max({std::abs(p.gamma), std::abs(p.barrier), std::abs(k1), std::abs(k2), 1e-300});
}

AmplitudeSet same_side(double g, double G, cplx k1, cplx k2) {
  const cplx I = kI;
  const double s2 = kSqrt2;
  const cplx d1 = I * G + s2 * k1 - s2 * k2;
  const cplx d2 = I * G + s2 * k1 + s2 * k2;
  AmplitudeSet s;
  s.a[0] = 1.0;
  s.a[1] = (2.0 * g * k1 * k1 * (g + I * k2) + 2.0 * k1 * k1 * k1 * (-I * g + k2) +
            k1 * (-I * g + k2) * (G * G - 2.0 * k2 * k2) - g * (g + I * k2) * (G * G + 2.0 * k2 * k2)) /
           ((g - I * k1) * (g - I * k2) * d1 * d2);
  s.a[2] = -(g + I * k2) / (g - I * k2);
  s.a[3] = (-2.0 * g * k1 * k1 + 2.0 * I * k1 * k1 * k1 + I * k1 * (G * G - 2.0 * k2 * k2) +
            g * (G * G + 2.0 * k2 * k2)) /
           ((g - I * k1) * d1 * d2);
  s.a[4] = -G / (G - I * s2 * (k1 - k2));
  s.a[5] = -G * (g + I * k1) * (g + I * k2) / ((g - I * k1) * (g - I * k2) * (G - I * s2 * k1 - I * s2 * k2));
  s.a[6] = G * (g + I * k1) / ((g - I * k1) * (G - I * s2 * k1 + I * s2 * k2));
  s.a[7] = G * (g + I * k2) / ((g - I * k2) * (G - I * s2 * (k1 + k2)));
  // B1 = -B4, as the Dirichlet row on x = 0 requires.
  s.b[0] = -I * s2 * (k1 - k2) / (G - I * s2 * (k1 - k2));
  s.b[1] = s2 * (g + I * k2) * (k1 + k2) / ((g - I * k2) * d2);
  s.b[2] = -s2 * (g + I * k2) * (k1 + k2) / ((g - I * k2) * d2);
  s.b[3] = I * s2 * (k1 - k2) / (G - I * s2 * (k1 - k2));
  s.b[4] = 0.0;
  s.b[5] = 2.0 * s2 * G * k1 * (-I * g + k2) / ((g - I * k1) * d1 * d2);
  s.b[6] = 2.0 * I * s2 * G * k1 * (g + I * k2) / ((g - I * k1) * d1 * d2);
  s.b[7] = 0.0;
  return s;
}

AmplitudeSet opposite_side(double g, double G, cplx k1, cplx k2) {
  const cplx I = kI;
  const double s2 = kSqrt2;
  const cplx d1 = I * G + s2 * k1 - s2 * k2;
  const cplx d2 = I * G + s2 * k1 + s2 * k2;
  AmplitudeSet s;
  s.b[0] = -G / (G - I * s2 * k1 + I * s2 * k2);
  s.b[1] = -I * G / d2;
  s.b[2] = I * G / d2;
  s.b[3] = G / (G - I * s2 * k1 + I * s2 * k2);
  s.b[4] = 1.0;
  s.b[5] = (2.0 * g * k1 * k1 + 2.0 * I * k1 * k1 * k1 + I * k1 * (G * G - 2.0 * k2 * k2) -
            g * (G * G + 2.0 * k2 * k2)) /
           ((g - I * k1) * d1 * d2);
  s.b[6] = (-2.0 * g * k1 * k1 - 2.0 * I * k1 * k1 * k1 - I * k1 * (G * G - 2.0 * k2 * k2) +
            g * (G * G + 2.0 * k2 * k2)) /
           ((g - I * k1) * d1 * d2);
  s.b[7] = -1.0;
  s.a[0] = 0.0;
  s.a[1] = 2.0 * s2 * G * k1 * (-I * g + k2) / ((g - I * k1) * d1 * d2);
  s.a[2] = 0.0;
  s.a[3] = 2.0 * s2 * G * k1 * (I * g + k2) / ((g - I * k1) * d1 * d2);
  s.a[4] = s2 * (k1 - k2) / d1;
  s.a[5] = s2 * (g + I * k1) * (k1 + k2) / ((g - I * k1) * d2);
  s.a[6] = -s2 * (g + I * k1) * (k1 - k2) / ((g - I * k1) * d1);
  s.a[7] = -s2 * (k1 + k2) / d2;
  return s;
}

}  // namespace

std::string_view to_string(IncidenceCase c) {
  switch (c) {
    case IncidenceCase::same_side: return "same-side";
    case IncidenceCase::opposite_side: return "opposite-side";
    case IncidenceCase::cluster: return "cluster";
  }
  return "unknown";
}

std::array<Pin, 2> incidence_pins(IncidenceCase c) {
  if (c == IncidenceCase::opposite_side) return {Pin{Region::a, 1, 0.0}, Pin{Region::b, 5, 1.0}};
  return {Pin{Region::a, 1, 1.0}, Pin{Region::b, 5, 0.0}};
}

AmplitudeSet closed_form(const ScatteringParams& params, const Kinematics& kin, IncidenceCase c) {
  model::validate(params);
  if (c == IncidenceCase::cluster)
    throw Error(ErrorKind::invalid_argument, "closed_form covers the plane-wave cases; use cluster()");
  model::wave_set(kin);
  const double g = params.gamma;
  const double G = params.barrier;
  const cplx k1 = kin.k1;
  const cplx k2 = kin.k2;
  const cplx I = kI;
  const Factor factors[] = {
      {"(gamma - i k1)", g - I * k1},
      {"(gamma - i k2)", g - I * k2},
      {"(i Gamma + sqrt2 k1 - sqrt2 k2)", I * G + kSqrt2 * (k1 - k2)},
      {"(i Gamma + sqrt2 k1 + sqrt2 k2)", I * G + kSqrt2 * (k1 + k2)},
      {"(Gamma - i sqrt2 (k1 - k2))", G - I * kSqrt2 * (k1 - k2)},
      {"(Gamma - i sqrt2 (k1 + k2))", G - I * kSqrt2 * (k1 + k2)},
  };
  check_factors(factors, natural_scale(params, k1, k2));
  return c == IncidenceCase::same_side ? same_side(g, G, k1, k2) : opposite_side(g, G, k1, k2);
}

Eigen::MatrixXcd matching_system(const ScatteringParams& params, const Kinematics& kin) {
  model::validate(params);
  const auto w = model::wave_set(kin);
  const double g = params.gamma;
  const double G = params.barrier;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(16, 16);
  int row = 0;
  // y = 0, region A: pairs sharing kx.
  for (auto [i, j] : {std::pair{0, 2}, {1, 3}, {4, 6}, {5, 7}}) {
    s(row, i) = kI * w[static_cast<size_t>(i)].ky + g;
    s(row, j) = kI * w[static_cast<size_t>(j)].ky + g;
    ++row;
  }
  // x = 0, region B: pairs sharing ky.
  for (auto [i, j] : {std::pair{0, 3}, {1, 2}, {4, 7}, {5, 6}}) {
    s(row, 8 + i) = 1.0;
    s(row, 8 + j) = 1.0;
    ++row;
  }
  // x = y: groups sharing kx + ky.
  for (auto [i, j] : {std::pair{0, 4}, {1, 5}, {2, 7}, {3, 6}}) {
    for (int idx : {i, j}) {
      s(row, idx) = 1.0;
      s(row, 8 + idx) = -1.0;
    }
    ++row;
    for (int idx : {i, j}) {
      const auto& k = w[static_cast<size_t>(idx)];
      const cplx d = kI * (k.ky - k.kx) / kSqrt2;
      s(row, 8 + idx) += d;
      s(row, idx) += G - d;
    }
    ++row;
  }
  return s;
}

OracleResult oracle_solve(const ScatteringParams& params, const Kinematics& kin, std::span<const Pin> pins) {
  const Eigen::MatrixXcd s = matching_system(params, kin);
  std::array<bool, 16> pinned{};
  AmplitudeSet out;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(16);
  for (const Pin& p : pins) {
    if (p.l < 1 || p.l > model::kWaveCount) throw Error(ErrorKind::invalid_argument, "pin index must be 1..8");
    const int col = (p.region == Region::a ? 0 : 8) + p.l - 1;
    if (pinned[static_cast<size_t>(col)]) throw Error(ErrorKind::invalid_argument, "coefficient pinned twice");
    pinned[static_cast<size_t>(col)] = true;
    out.flat(col) = p.value;
    rhs -= s.col(col) * p.value;
  }
  std::vector<int> free;
  for (int i = 0; i < 16; ++i)
    if (!pinned[static_cast<size_t>(i)]) free.push_back(i);
  Eigen::MatrixXcd reduced(16, static_cast<Eigen::Index>(free.size()));
  for (size_t c = 0; c < free.size(); ++c) reduced.col(static_cast<Eigen::Index>(c)) = s.col(free[c]);
  const numerics::DenseSolution sol = numerics::solve_dense(reduced, rhs);
  for (size_t c = 0; c < free.size(); ++c) out.flat(free[c]) = sol.x(static_cast<Eigen::Index>(c));
  return OracleResult{out, sol.residual, sol.condition};
}

Kinematics cluster_kinematics(const ScatteringParams& params, double k) {
  return Kinematics{cplx{k, 0.0}, cplx{0.0, params.gamma}};
}

double cluster_energy(const ScatteringParams& params, double k) { return k * k - params.gamma * params.gamma; }

AmplitudeSet cluster(const ScatteringParams& params, double k) {
  model::validate(params);
  if (!(params.gamma > 0.0)) throw Error(ErrorKind::invalid_argument, "no bound cluster: gamma must be positive");
  if (!std::isfinite(k) || k == 0.0) throw Error(ErrorKind::invalid_argument, "cluster momentum must be real and nonzero");
  const double g = params.gamma;
  const double G = params.barrier;
  const cplx I = kI;
  const double s2 = kSqrt2;
  const Factor factors[] = {
      {"(i sqrt2 k + sqrt2 gamma - Gamma)", I * s2 * k + s2 * g - G},
      {"(-i sqrt2 (k - i gamma) + Gamma)", -I * s2 * (k - I * g) + G},
      {"(k + i gamma)", k + I * g},
      {"(sqrt2 k - i sqrt2 gamma + i Gamma)", s2 * k - I * s2 * g + I * G},
      {"(sqrt2 k + i (sqrt2 gamma + Gamma))", s2 * k + I * (s2 * g + G)},
      {"(-i k + gamma)", -I * k + g},
      {"(-i sqrt2 k - sqrt2 gamma + Gamma)", -I * s2 * k - s2 * g + G},
  };
  check_factors(factors, natural_scale(params, k, g));
  AmplitudeSet s;
  s.b[0] = 1.0 + G / (I * s2 * k + s2 * g - G);
  s.b[3] = -1.0 + G / (-I * s2 * (k - I * g) + G);
  s.a[0] = 1.0;
  s.a[3] = -(k - I * g) * (2.0 * k * k + 4.0 * I * k * g - 2.0 * g * g + G * G) /
           ((k + I * g) * (s2 * k - I * s2 * g + I * G) * (s2 * k + I * (s2 * g + G)));
  s.a[4] = G / (I * s2 * k + s2 * g - G);
  s.a[6] = (I * k + g) * G / ((-I * k + g) * (-I * s2 * k - s2 * g + G));
  return s;
}

Observables observables(const AmplitudeSet& amps, IncidenceCase) {
  Observables o;
  for (int i = 0; i < 16; ++i) o.weights[static_cast<size_t>(i)] = std::norm(amps.flat(i));
  o.reflection = std::norm(amps.a[3]);
  o.transmission = std::norm(amps.b[0]);
  return o;
}

double max_relative_mismatch(const AmplitudeSet& x, const AmplitudeSet& y) {
  double scale = 0.0;
  for (int i = 0; i < 16; ++i) scale = std::max(scale, std::abs(y.flat(i)));
  const double floor = std::max(0.01 * scale, 1e-300);
  double worst = 0.0;
  for (int i = 0; i < 16; ++i)
    worst = std::max(worst, std::abs(x.flat(i) - y.flat(i)) / std::max(std::abs(y.flat(i)), floor));
  return worst;
}

}  // namespace qwire::bethe
