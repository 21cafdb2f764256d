#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qwire/cli/cli.hpp"
#include "qwire/curve/curve.hpp"
#include "qwire/funceq/funceq.hpp"
#include "qwire/model/model.hpp"

namespace qwire::cli {

namespace {

using model::Kinematics;
using model::ScatteringParams;

constexpr double kDefaultIdentityTol = 1e-9;

class Tracker {
 public:
  Tracker(std::string suite, std::string name, double threshold) {
    r_.suite = std::move(suite);
    r_.name = std::move(name);
    r_.threshold = threshold;
  }

  void add(double err, const std::function<std::string()>& sample) {
    ++r_.checked;
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    if (r_.checked == 1 || err > r_.max_error) {
      r_.max_error = err;
      r_.worst_sample = sample();
    }
  }
  void skip() { ++r_.skipped; }
  PropertyResult result() const { return r_; }

 private:
  PropertyResult r_;
};

// "name=value" pairs joined by spaces.
class Sample {
 public:
  Sample& operator()(std::string_view name, double v) {
    if (!s_.empty()) s_ += ' ';
    s_ += std::string(name) + "=" + format_number(v);
    return *this;
  }
  Sample& operator()(std::string_view name, cplx v) {
    return (*this)(std::string(name) + "_re", v.real())(std::string(name) + "_im", v.imag());
  }
  Sample& operator()(std::string_view name, std::string_view v) {
    if (!s_.empty()) s_ += ' ';
    s_ += std::string(name) + "=" + std::string(v);
    return *this;
  }
  Sample& raw(const std::string& text) {
    if (!s_.empty()) s_ += ' ';
    s_ += text;
    return *this;
  }
  const std::string& str() const { return s_; }

 private:
  std::string s_;
};

std::mt19937_64 suite_rng(std::uint64_t seed, std::uint64_t suite_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite_id)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double inf_norm(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// ---- funceq ---------------------------------------------------------------

std::vector<PropertyResult> suite_funceq(const VerifyConfig& cfg) {
  const int n = cfg.samples > 0 ? cfg.samples : 1000;
  const double tol = cfg.tol.value_or(kDefaultIdentityTol);
  auto rng = suite_rng(cfg.seed, 1);
  Tracker identity("funceq", "n_minus_identity", tol);
  Tracker block_diag("funceq", "n_plus_block_diagonal", 1e-12);
  Tracker anti_diag("funceq", "m_block_anti_diagonal", 1e-12);
  Tracker periodic("funceq", "n_periodicity", tol);
  Tracker conj("funceq", "n_conjugation", tol);
  Tracker forms("funceq", "m_z_form_vs_alpha_form", 1e-12);
  Tracker fe("funceq", "functional_equations", 1e-10);
  Tracker disc("funceq", "discriminant_direct_vs_closed", 1e-8);

  for (int i = 0; i < n; ++i) {
    const ScatteringParams p{uniform(rng, 0.1, 5.0), uniform(rng, 0.1, 5.0)};
    const double k = uniform(rng, 0.1, 5.0);
    const cplx alpha{uniform(rng, 0.0, 2.0 * kPi), uniform(rng, -1.0, 1.0)};
    const double r = uniform(rng, 0.5, 2.0);
    const cplx z = std::polar(r, uniform(rng, 0.0, 2.0 * kPi));
    const auto sample = [&] {
      return Sample()("gamma", p.gamma)("barrier", p.barrier)("k", k)("alpha", alpha).str();
    };
    try {
      const auto nm = funceq::n_eval(p, k, alpha, funceq::Symmetry::minus);
      identity.add(inf_norm(nm.n - Mat4::Identity()), sample);

      const auto np = funceq::n_eval(p, k, alpha, funceq::Symmetry::plus);
      block_diag.add(np.off_block_mass(), sample);
      const double scale = inf_norm(np.n);

      const auto np2 = funceq::n_eval(p, k, alpha + 2.0 * kPi, funceq::Symmetry::plus);
      periodic.add(inf_norm(np2.n - np.n) / scale, sample);

      const Mat4 m = funceq::m_eval(p, k, alpha, funceq::Symmetry::plus);
      const double off = std::max(m.topLeftCorner<2, 2>().cwiseAbs().maxCoeff(),
                                  m.bottomRightCorner<2, 2>().cwiseAbs().maxCoeff());
      anti_diag.add(off / m.cwiseAbs().maxCoeff(), sample);

      const auto shifted = funceq::n_eval(p, k, alpha + kPi / 4.0, funceq::Symmetry::plus);
      const Mat4 rhs = m * np.n * m.inverse();
      conj.add(inf_norm(shifted.n - rhs) / std::max(inf_norm(rhs), 1.0), sample);

      const Mat4 mz = funceq::m_eval_z(funceq::scale(p, k), std::exp(kI * alpha), funceq::Symmetry::plus);
      forms.add(inf_norm(mz - m) / inf_norm(m), sample);

      // g(alpha + pi/4) = M g(alpha) in the ordering (g1, g4, g3, g2).
      for (auto sym : {funceq::Symmetry::plus, funceq::Symmetry::minus}) {
        const Mat4 ms = funceq::m_eval(p, k, alpha, sym);
        Eigen::Vector4cd g;
        for (int j = 0; j < 4; ++j) g[j] = cplx{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const Eigen::Vector4cd gs = ms * g;
        const cplx g1 = g[0], g4 = g[1], g3 = g[2], g2 = g[3];
        const cplx g1s = gs[0], g4s = gs[1], g3s = gs[2], g2s = gs[3];
        const cplx half_s = kI * k * std::sin(alpha);
        const double pm = sym == funceq::Symmetry::plus ? 1.0 : -1.0;
        const auto rel = [](cplx resid, double scale_sum) { return std::abs(resid) / scale_sum; };
        const cplx lhs1 = half_s * (g3 - g4s - g1s + g2);
        const cplx rhs1 = -p.barrier * (g3 + g4s);
        double worst = rel(lhs1 - rhs1, std::abs(lhs1) + std::abs(rhs1));
        worst = std::max(worst, rel(g3 + g4s - g1s - g2,
                                    std::abs(g3) + std::abs(g4s) + std::abs(g1s) + std::abs(g2)));
        const cplx lhs3 = half_s * (g1 - g2s);
        const cplx rhs3 = -p.gamma * (g1 + g2s);
        worst = std::max(worst, rel(lhs3 - rhs3, std::abs(lhs3) + std::abs(rhs3)));
        worst = std::max(worst, rel(g3s - pm * g4, std::abs(g3s) + std::abs(g4)));
        fe.add(worst, sample);
      }

      for (int which : {1, 2}) {
        const cplx pd = funceq::block_denominator(funceq::scale(p, k), z, which);
        const cplx direct = funceq::discriminant_direct(p, k, z, which) * pd * pd;
        const cplx closed = funceq::discriminant_closed_form(p, k, z, which);
        disc.add(std::abs(direct - closed) / std::abs(closed), [&] {
          return Sample()("gamma", p.gamma)("barrier", p.barrier)("k", k)("z", z)("which", which).str();
        });
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::pole_of_m) throw;
      identity.skip();
    }
  }
  return {identity.result(), block_diag.result(), anti_diag.result(), periodic.result(),
          conj.result(),     forms.result(),      fe.result(),        disc.result()};
}

// ---- bethe ----------------------------------------------------------------

std::vector<PropertyResult> suite_bethe(const VerifyConfig& cfg) {
  const int n = cfg.samples > 0 ? cfg.samples : 200;
  const double tol = cfg.tol.value_or(kDefaultIdentityTol);
  auto rng = suite_rng(cfg.seed, 2);
  Tracker oracle("bethe", "closed_form_vs_oracle", tol);
  Tracker zeros("bethe", "structural_zeros", 1e-12);
  Tracker unimod("bethe", "unimodular_a3", 1e-12);
  Tracker resid("bethe", "boundary_residuals", 1e-9);
  Tracker flux("bethe", "flux_conservation", 1e-6);
  Tracker cl_oracle("bethe", "cluster_vs_oracle", tol);
  Tracker cl_energy("bethe", "cluster_energy", 0.0);
  Tracker cl_zeros("bethe", "cluster_structural_zeros", 0.0);
  Tracker cl_bound("bethe", "cluster_bound_waves", 0.0);
  Tracker cl_refl("bethe", "cluster_reflection_at_most_one", 1e-12);
  Tracker cl_flux("bethe", "cluster_flux_conservation", 1e-6);
  Tracker unitary("bethe", "one_particle_unitarity", 1e-14);
  Tracker antisym("bethe", "antisymmetry", 0.0);

  const std::array<double, 5> radii{0.5, 1.0, 2.0, 5.0, 10.0};
  const int flux_every = std::max(1, n / 25);

  for (int i = 0; i < n; ++i) {
    const ScatteringParams p{uniform(rng, 0.1, 5.0), uniform(rng, 0.1, 5.0)};
    const Kinematics kin(-uniform(rng, 0.1, 5.0), -uniform(rng, 0.1, 5.0));
    const double kc = -uniform(rng, 0.1, 5.0);
    const auto sample = [&] {
      return Sample()("gamma", p.gamma)("barrier", p.barrier)("k1", kin.k1.real())("k2", kin.k2.real()).str();
    };
    const auto cluster_sample = [&] {
      return Sample()("gamma", p.gamma)("barrier", p.barrier)("k", kc).str();
    };

    for (auto c : {bethe::IncidenceCase::same_side, bethe::IncidenceCase::opposite_side}) {
      const auto cf = bethe::closed_form(p, kin, c);
      const auto pins = bethe::incidence_pins(c);
      const auto os = bethe::oracle_solve(p, kin, pins);
      oracle.add(bethe::max_relative_mismatch(cf, os.amps), sample);
      if (c == bethe::IncidenceCase::same_side) {
        zeros.add(std::abs(cf.at(model::Region::b, 8)), sample);
        unimod.add(std::abs(std::abs(cf.at(model::Region::a, 3)) - 1.0), sample);
      } else {
        zeros.add(std::max(std::abs(cf.at(model::Region::a, 3)),
                           std::abs(cf.at(model::Region::b, 8) + 1.0)), sample);
      }
      const model::WedgeField field{cf, kin};
      double worst = 0.0;
      for (const auto& r : model::boundary_residuals(field, p, model::OuterBoundary::dirichlet, radii)) {
        worst = std::max(worst, r.max());
      }
      resid.add(worst, sample);
      if (i % flux_every == 0) {
        const auto f = model::flux_through_arc(field, 10.0);
        flux.add(std::abs(f.net) / f.gross, sample);
      }
    }

    const auto cl = bethe::cluster(p, kc);
    const auto ckin = bethe::cluster_kinematics(p, kc);
    const auto pins = bethe::incidence_pins(bethe::IncidenceCase::cluster);
    cl_oracle.add(bethe::max_relative_mismatch(cl, bethe::oracle_solve(p, ckin, pins).amps), cluster_sample);
    cl_energy.add(std::abs(ckin.energy - cplx{bethe::cluster_energy(p, kc)}), cluster_sample);
    double zero_mass = 0.0;
    for (int l : {2, 3, 6, 7, 8}) zero_mass = std::max(zero_mass, std::abs(cl.at(model::Region::b, l)));
    for (int l : {2, 3, 6, 8}) zero_mass = std::max(zero_mass, std::abs(cl.at(model::Region::a, l)));
    cl_zeros.add(zero_mass, cluster_sample);
    // Every outgoing wave must stay bounded over its region and be evanescent.
    const auto waves = model::wave_set(ckin);
    int unbound = 0;
    for (int idx = 1; idx < 16; ++idx) {
      if (std::abs(cl.flat(idx)) == 0.0) continue;
      const auto& w = waves[static_cast<size_t>(idx % 8)];
      const double edge = idx < 8 ? w.kx.imag() : w.ky.imag();
      const double diagonal = w.kx.imag() + w.ky.imag();
      const bool evanescent = std::abs(w.kx.imag()) + std::abs(w.ky.imag()) > 0.0;
      if (edge < -1e-14 || diagonal < -1e-14 || !evanescent) ++unbound;
    }
    cl_bound.add(unbound, cluster_sample);
    cl_refl.add(std::max(0.0, std::abs(cl.at(model::Region::a, 4)) - 1.0), cluster_sample);
    if (i % flux_every == 0) {
      const auto f = model::flux_through_arc(model::WedgeField{cl, ckin}, 10.0);
      cl_flux.add(std::abs(f.net) / f.gross, cluster_sample);
    }

    const double k_a = uniform(rng, 0.1, 5.0);
    const double k_b = uniform(rng, 0.1, 5.0);
    const auto f1 = model::one_particle(p.barrier, k_a);
    const auto f2 = model::one_particle(p.barrier, k_b);
    const auto op_sample = [&] { return Sample()("barrier", p.barrier)("k", k_a).str(); };
    unitary.add(std::max(std::abs(std::norm(f1.r) + std::norm(f1.t) - 1.0), std::abs(1.0 + f1.r - f1.t)),
                op_sample);
    const double r1 = uniform(rng, -5.0, 5.0);
    const double r2 = uniform(rng, -5.0, 5.0);
    antisym.add(std::abs(model::assemble_antisym(f1, f2, r1, r2) + model::assemble_antisym(f1, f2, r2, r1)),
                [&] { return Sample()("barrier", p.barrier)("ka", k_a)("kb", k_b)("r1", r1)("r2", r2).str(); });
  }
  return {oracle.result(),    zeros.result(),    unimod.result(),   resid.result(),   flux.result(),
          cl_oracle.result(), cl_energy.result(), cl_zeros.result(), cl_bound.result(), cl_refl.result(),
          cl_flux.result(),   unitary.result(),   antisym.result()};
}

// ---- curve ----------------------------------------------------------------

double closure_error(const std::vector<cplx>& pts, const std::function<cplx(cplx)>& map) {
  double worst = 0.0;
  for (cplx h : pts) {
    const cplx m = map(h);
    double best = std::numeric_limits<double>::infinity();
    for (cplx q : pts) best = std::min(best, std::abs(q - m));
    worst = std::max(worst, best / (1.0 + std::abs(m)));
  }
  return worst;
}

// Zeros of p(z w^j), q(z w^j): the poles of the 8-fold product.
std::vector<cplx> product_poles(const funceq::ScaledCouplings& c) {
  std::vector<cplx> out;
  for (double a : {c.gamma_k, c.barrier_k}) {
    const double s = std::sqrt(a * a + 4.0);
    for (double root : {(a + s) / 2.0, (a - s) / 2.0}) {
      for (int j = 0; j < 8; ++j) out.push_back(root * std::polar(1.0, -j * kPi / 4.0));
    }
  }
  return out;
}

double distance_to(const std::vector<cplx>& pts, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (cplx q : pts) d = std::min(d, std::abs(q - z));
  return d;
}

// Follows lambda along a closed circle, always picking the eigenvalue nearest
// the previous one. Returns the end value.
cplx walk_lambda(const curve::CurveContext& ctx, cplx center, double radius, double angle,
                 cplx start_value) {
  constexpr int kSteps = 720;
  cplx prev = start_value;
  for (int s = 1; s <= kSteps; ++s) {
    const cplx z = center + radius * std::exp(kI * (angle + 2.0 * kPi * s / kSteps));
    const auto sp = numerics::spectral2(ctx.block(z), 0.0);
    const cplx a = sp.eigenvalues[0];
    const cplx b = sp.eigenvalues[1];
    prev = std::abs(a - prev) <= std::abs(b - prev) ? a : b;
  }
  return prev;
}

std::vector<PropertyResult> suite_curve(const VerifyConfig& cfg) {
  const int n = cfg.samples > 0 ? cfg.samples : 50;
  auto rng = suite_rng(cfg.seed, 3);
  Tracker count("curve", "branch_point_count", 0.0);
  Tracker residual("curve", "branch_point_residual", 1e-8);
  Tracker rot("curve", "closure_iz", 1e-8);
  Tracker inv("curve", "closure_inverse", 1e-8);
  Tracker cuts("curve", "cuts_avoid_halfaxis", 0.0);
  Tracker norm("curve", "branch_normalization", 1e-4);
  Tracker sheets("curve", "sheet_product", 1e-10);
  Tracker recon("curve", "eigen_reconstruction", 1e-10);
  Tracker vieta("curve", "eigen_vieta", 1e-10);
  Tracker mono("curve", "monodromy", 1e-6);
  Tracker jump("curve", "g0_jump", 1e-3);
  Tracker ladder("curve", "g0_jump_ladder_monotone", 0.0);
  Tracker xdet("curve", "generating_determinant", 1e-8);
  Tracker minus("curve", "minus_sector_trivial", 1e-12);

  const int jump_sets = std::clamp(n / 10, 1, 5);
  for (int i = 0; i < n; ++i) {
    const ScatteringParams p{uniform(rng, 0.2, 3.0), uniform(rng, 0.2, 3.0)};
    const double k = uniform(rng, 0.5, 2.0);
    const double zr = uniform(rng, 0.5, 2.0);
    const double zt = uniform(rng, 0.0, 2.0 * kPi);
    for (int which : {1, 2}) {
      const auto sample = [&] {
        return Sample()("gamma", p.gamma)("barrier", p.barrier)("k", k)("which", which).str();
      };
      const curve::CurveContext ctx(p, k, which);
      const auto& bs = ctx.branches();
      count.add(std::abs(static_cast<double>(bs.points.size()) - 16.0), sample);
      residual.add(bs.max_residual, sample);
      rot.add(closure_error(bs.points, [](cplx h) { return kI * h; }), sample);
      inv.add(closure_error(bs.points, [](cplx h) { return 1.0 / h; }), sample);
      cuts.add(static_cast<double>(std::count_if(bs.cuts.begin(), bs.cuts.end(), curve::cut_meets_halfaxis)),
               sample);
      const cplx far = std::polar(1e3, zt);
      norm.add(std::abs(ctx.curve({far}) / std::pow(far, 8) - 1.0), sample);

      // Sample point in the annulus, moved off branch points and poles.
      std::vector<cplx> avoid = bs.points;
      const auto poles = product_poles(ctx.spec().couplings);
      avoid.insert(avoid.end(), poles.begin(), poles.end());
      cplx z = std::polar(zr, zt);
      for (int tries = 0; tries < 16 && distance_to(avoid, z) < 1e-2; ++tries) z *= std::polar(1.0, 0.01);
      const auto zsample = [&] { return Sample().raw(sample())("z", z).str(); };
      const cplx kp = ctx.curve({z, curve::Sheet::plus});
      const cplx km = ctx.curve({z, curve::Sheet::minus});
      const cplx pz = ctx.spec().inner(z);
      sheets.add(std::abs(kp * km + pz) / std::abs(pz), zsample);
      const Mat2 nb = ctx.block(z);
      const auto sp = ctx.eigen({z, curve::Sheet::plus});
      recon.add((nb - sp.reconstruct()).norm() / nb.norm(), zsample);
      const double scale = std::max(1.0, std::abs(sp.eigenvalues[0]) + std::abs(sp.eigenvalues[1]));
      vieta.add(std::max(std::abs(sp.eigenvalues[0] + sp.eigenvalues[1] - nb.trace()) / scale,
                         std::abs(sp.eigenvalues[0] * sp.eigenvalues[1] - nb.determinant()) / (scale * scale)),
                zsample);

      if (i < 5) {
        // A loop around one off-axis branch point exchanges the sheets; a
        // loop of the same size around a regular point does not.
        std::vector<cplx> others;
        cplx h = bs.points.front();
        double room = -1.0;
        for (cplx q : bs.points) {
          if (std::abs(q.imag()) < 0.05) continue;
          std::vector<cplx> rest;
          for (cplx o : avoid) {
            if (std::abs(o - q) > 1e-9) rest.push_back(o);
          }
          const double d = std::min(distance_to(rest, q), std::abs(q.imag())) / std::abs(q);
          if (d > room) {
            room = d;
            h = q;
            others = rest;
          }
        }
        const double radius = 0.3 * std::min(distance_to(others, h), std::abs(h.imag()));
        constexpr double kStartAngle = 0.3;
        const cplx start = h + radius * std::exp(kI * kStartAngle);
        const cplx lp = ctx.lambda({start, curve::Sheet::plus});
        const cplx lm = ctx.lambda({start, curve::Sheet::minus});
        const cplx around = walk_lambda(ctx, h, radius, kStartAngle, lp);
        const double sep = std::abs(lp - lm);
        const cplx regular_center = h * (1.0 + 2.5 * radius / std::abs(h));
        const cplx rs = regular_center + 0.4 * radius * std::exp(kI * kStartAngle);
        const cplx lr = ctx.lambda({rs, curve::Sheet::plus});
        const cplx back = walk_lambda(ctx, regular_center, 0.4 * radius, kStartAngle, lr);
        mono.add(std::max(std::abs(around - lm), std::abs(back - lr)) / sep,
                 [&] { return Sample().raw(sample())("h", h)("radius", radius).str(); });
      }

      if (i < jump_sets) {
        const curve::G0 g0(ctx);
        for (double x : curve::admissible_cut_points(g0, 4)) {
          const auto xs = [&] { return Sample().raw(sample())("x", x).str(); };
          try {
            const auto j = g0.jump(x);
            jump.add(j.error, xs);
            int violations = 0;
            if (j.error_ladder[1] > j.error_ladder[0]) ++violations;
            if (j.error_ladder[2] > j.error_ladder[1]) ++violations;
            if (j.error > j.error_ladder[2]) ++violations;
            ladder.add(violations, xs);
            // det X = 1 is checked where the e^{2 Re E} cancellation in the 2x2
            // determinant leaves digits to spare.
            const cplx off{x, 0.05};
            if (std::abs(g0.exponent(off).real()) < 5.0) {
              xdet.add(std::abs(g0.generating_solution(off).determinant() - 1.0), xs);
            } else {
              xdet.skip();
            }
          } catch (const Error&) {
            jump.add(std::numeric_limits<double>::infinity(), xs);
          }
        }
        const double x = 1.0 + 0.1 * which;
        const cplx gm = curve::g0_eval(p, k, which, funceq::Symmetry::minus, {cplx{x, 0.1}});
        const double mm = curve::generating_jump_mismatch(p, k, which, funceq::Symmetry::minus, x);
        minus.add(std::max(std::abs(gm - 1.0), mm), sample);
      }
    }
  }
  return {count.result(), residual.result(), rot.result(),    inv.result(),    cuts.result(),
          norm.result(),  sheets.result(),   recon.result(),  vieta.result(),  mono.result(),
          jump.result(),  ladder.result(),   xdet.result(),   minus.result()};
}

}  // namespace

bool VerifyReport::pass() const {
  return !properties.empty() &&
         std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.pass(); });
}

const PropertyResult* VerifyReport::find(std::string_view name) const {
  for (const auto& p : properties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

VerifyReport run_verify(const VerifyConfig& config) {
  const auto& s = config.suite;
  if (s != "bethe" && s != "funceq" && s != "curve" && s != "all") {
    throw Error(ErrorKind::invalid_argument, "unknown suite '" + s + "'");
  }
  if (config.samples < 0) throw Error(ErrorKind::invalid_argument, "samples must be positive");
  VerifyReport report{config, {}};
  const auto append = [&](std::vector<PropertyResult> v) {
    report.properties.insert(report.properties.end(), v.begin(), v.end());
  };
  if (s == "funceq" || s == "all") append(suite_funceq(config));
  if (s == "bethe" || s == "all") append(suite_bethe(config));
  if (s == "curve" || s == "all") append(suite_curve(config));
  return report;
}

std::string to_json(const VerifyReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = kVersion;
  j["conventions"] = {{"block", curve::kBlockConvention}, {"jump", curve::kJumpConvention}};
  j["suite"] = report.config.suite;
  j["seed"] = report.config.seed;
  j["samples"] = report.config.samples;
  if (report.config.tol) j["tol"] = *report.config.tol;
  ordered_json props = ordered_json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"suite", p.suite},
                     {"name", p.name},
                     {"max_error", format_number(p.max_error)},
                     {"threshold", p.threshold},
                     {"checked", p.checked},
                     {"skipped", p.skipped},
                     {"pass", p.pass()},
                     {"worst_sample", p.worst_sample}});
  }
  j["properties"] = props;
  j["pass"] = report.pass();
  return j.dump(2) + "\n";
}

}  // namespace qwire::cli
