#include "qwire/model/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "qwire/errors.hpp"

namespace qwire::model {

namespace {

constexpr std::array<std::string_view, 16> kNames{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
                                                  "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8"};

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Per-wave pieces at one point: the term c e and its angular derivative.
struct Terms {
  std::array<cplx, kWaveCount> value;
  std::array<cplx, kWaveCount> d_phi;
};

Terms terms(const std::array<cplx, kWaveCount>& c, const std::array<WaveVector, kWaveCount>& w,
            double x, double y) {
  Terms out;
  for (size_t l = 0; l < kWaveCount; ++l) {
    const cplx e = c[l] == cplx{0.0} ? cplx{0.0} : c[l] * std::exp(kI * (w[l].kx * x + w[l].ky * y));
    out.value[l] = e;
    // d_phi = -y d_x + x d_y
    out.d_phi[l] = kI * (-y * w[l].kx + x * w[l].ky) * e;
  }
  return out;
}

double abs_sum(const std::array<cplx, kWaveCount>& v) {
  double s = 0.0;
  for (const cplx& c : v) s += std::abs(c);
  return s;
}

cplx sum(const std::array<cplx, kWaveCount>& v) {
  cplx s{0.0};
  for (const cplx& c : v) s += c;
  return s;
}

double ratio(double num, double scale) { return scale > 1e-300 ? num / scale : 0.0; }

}  // namespace

void validate(const ScatteringParams& params) {
  if (!std::isfinite(params.gamma) || !std::isfinite(params.barrier))
    throw Error(ErrorKind::invalid_argument, "couplings must be finite");
}

std::array<WaveVector, kWaveCount> wave_set(const Kinematics& kin, double tol) {
  const cplx k1 = kin.k1;
  const cplx k2 = kin.k2;
  if (!finite(k1) || !finite(k2)) throw Error(ErrorKind::invalid_argument, "momenta must be finite");
  const double scale = std::max(std::abs(k1), std::abs(k2));
  if (std::abs(k1 - k2) <= tol * scale)
    throw Error(ErrorKind::degenerate_kinematics, "degenerate kinematics k1 = k2");
  if (std::abs(k1 + k2) <= tol * scale)
    throw Error(ErrorKind::degenerate_kinematics, "degenerate kinematics k1 = -k2");
  return {WaveVector{k1, k2},  WaveVector{-k1, -k2}, WaveVector{k1, -k2}, WaveVector{-k1, k2},
          WaveVector{k2, k1},  WaveVector{-k2, -k1}, WaveVector{k2, -k1}, WaveVector{-k2, k1}};
}

std::string_view amplitude_name(int flat_index) {
  if (flat_index < 0 || flat_index >= 16) throw Error(ErrorKind::invalid_argument, "amplitude index out of range");
  return kNames[static_cast<size_t>(flat_index)];
}

cplx eval_field(const WedgeField& f, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || x < 0.0 || y < 0.0) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") is outside the wedge 0 <= phi <= pi/2";
    throw Error(ErrorKind::out_of_wedge, os.str());
  }
  const auto w = wave_set(f.kin);
  const auto& c = y <= x ? f.amps.a : f.amps.b;
  return sum(terms(c, w, x, y).value);
}

double BoundaryResidual::max() const { return std::max({interface, robin, outer, continuity}); }

std::vector<BoundaryResidual> boundary_residuals(const WedgeField& f, const ScatteringParams& params,
                                                 OuterBoundary outer, std::span<const double> radii) {
  const auto w = wave_set(f.kin);
  std::vector<BoundaryResidual> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0)) throw Error(ErrorKind::invalid_argument, "residual radii must be positive");
    BoundaryResidual res;
    res.radius = r;

    const double d = r / kSqrt2;
    const Terms ta = terms(f.amps.a, w, d, d);
    const Terms tb = terms(f.amps.b, w, d, d);
    const cplx va = sum(ta.value);
    const cplx vb = sum(tb.value);
    const cplx jump = sum(tb.d_phi) - sum(ta.d_phi);
    res.interface = ratio(std::abs(jump + r * params.barrier * va),
                          abs_sum(ta.d_phi) + abs_sum(tb.d_phi) + std::abs(r * params.barrier) * abs_sum(ta.value));
    res.continuity = ratio(std::abs(va - vb), abs_sum(ta.value) + abs_sum(tb.value));

    const Terms t0 = terms(f.amps.a, w, r, 0.0);
    res.robin = ratio(std::abs(sum(t0.d_phi) + r * params.gamma * sum(t0.value)),
                      abs_sum(t0.d_phi) + std::abs(r * params.gamma) * abs_sum(t0.value));

    const Terms t1 = terms(f.amps.b, w, 0.0, r);
    res.outer = outer == OuterBoundary::dirichlet ? ratio(std::abs(sum(t1.value)), abs_sum(t1.value))
                                                  : ratio(std::abs(sum(t1.d_phi)), abs_sum(t1.d_phi));
    out.push_back(res);
  }
  return out;
}

cplx OneParticleScattering::wavefunction(double x) const {
  if (x < 0.0) return std::exp(kI * (k * x)) + r * std::exp(-kI * (k * x));
  return t * std::exp(kI * (k * x));
}

OneParticleScattering one_particle(double barrier, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorKind::invalid_argument, "one-particle momentum must be positive");
  if (!std::isfinite(barrier)) throw Error(ErrorKind::invalid_argument, "barrier strength must be finite");
  const cplx den = 2.0 * kI * k + barrier;
  return OneParticleScattering{-barrier / den, 2.0 * kI * k / den, k, barrier};
}

cplx assemble_antisym(const OneParticleScattering& f1, const OneParticleScattering& f2, double r1,
                      double r2) {
  return f1.wavefunction(r1) * f2.wavefunction(r2) - f1.wavefunction(r2) * f2.wavefunction(r1);
}

FluxReport flux_through_arc(const WedgeField& f, double radius, int n) {
  if (!(radius > 0.0)) throw Error(ErrorKind::invalid_argument, "arc radius must be positive");
  if (n < 1) throw Error(ErrorKind::invalid_argument, "sample count must be positive");
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto w = wave_set(f.kin);
  const int panels = std::max(1, (n + 19) / 20);
  FluxReport rep;
  for (int region = 0; region < 2; ++region) {
    const auto& c = region == 0 ? f.amps.a : f.amps.b;
    const double lo = region == 0 ? 0.0 : kPi / 4.0;
    const double width = kPi / 4.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * width;
      const auto g = [&](double phi) {
        const double ux = std::cos(phi);
        const double uy = std::sin(phi);
        cplx v{0.0};
        cplx dv{0.0};
        double gross = 0.0;
        for (size_t l = 0; l < kWaveCount; ++l) {
          if (c[l] == cplx{0.0}) continue;
          const cplx kr = w[l].kx * ux + w[l].ky * uy;
          const cplx e = c[l] * std::exp(kI * radius * kr);
          v += e;
          dv += kI * kr * e;
          gross += std::norm(e) * std::abs(kr.real());
        }
        return std::array<double, 2>{(std::conj(v) * dv).imag(), gross};
      };
      rep.net += radius * Rule::integrate([&](double phi) { return g(phi)[0]; }, a, a + width);
      rep.gross += radius * Rule::integrate([&](double phi) { return g(phi)[1]; }, a, a + width);
    }
  }
  return rep;
}

}  // namespace qwire::model
