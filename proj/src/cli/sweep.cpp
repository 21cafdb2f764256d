#include <algorithm>
#include <array>
#include <atomic>
#include <thread>

#include "qwire/cli/cli.hpp"
#include "qwire/model/model.hpp"

namespace qwire::cli {

namespace {

constexpr std::array<double, 5> kResidualRadii{0.5, 1.0, 2.0, 5.0, 10.0};
constexpr double kFluxRadius = 10.0;

}  // namespace

SweepRecord evaluate_point(const SweepPoint& point, std::size_t index) {
  SweepRecord rec;
  rec.index = index;
  rec.point = point;
  try {
    const model::ScatteringParams params{point.gamma, point.barrier};
    model::validate(params);
    const bool is_cluster = point.incidence == bethe::IncidenceCase::cluster;
    const model::Kinematics kin = is_cluster ? bethe::cluster_kinematics(params, point.k)
                                             : model::Kinematics(point.k1, point.k2);
    rec.amps = is_cluster ? bethe::cluster(params, point.k) : bethe::closed_form(params, kin, point.incidence);

    const auto pins = bethe::incidence_pins(point.incidence);
    rec.oracle_mismatch = bethe::max_relative_mismatch(rec.amps, bethe::oracle_solve(params, kin, pins).amps);

    const model::WedgeField field{rec.amps, kin};
    for (const auto& r : model::boundary_residuals(field, params, model::OuterBoundary::dirichlet, kResidualRadii)) {
      rec.max_residual = std::max(rec.max_residual, r.max());
    }
    const auto flux = model::flux_through_arc(field, kFluxRadius);
    rec.flux_defect = flux.gross > 0.0 ? std::abs(flux.net) / flux.gross : 0.0;

    const auto obs = bethe::observables(rec.amps, point.incidence);
    rec.reflection = obs.reflection;
    rec.transmission = obs.transmission;
  } catch (const Error& e) {
    rec.status = std::string(to_string(e.kind()));
    rec.message = e.what();
    rec.amps = {};
  }
  return rec;
}

std::vector<SweepRecord> run_sweep(const SweepPoint& base, const std::vector<GridAxis>& axes, int jobs) {
  std::vector<std::vector<double>> values;
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.var != "gamma" && a.var != "barrier" && a.var != "k" && a.var != "k1" && a.var != "k2") {
      throw Error(ErrorKind::invalid_argument, "unknown sweep variable '" + a.var + "'");
    }
    values.push_back(a.values());
    total *= values.back().size();
  }
  if (axes.empty() || total == 0) throw Error(ErrorKind::invalid_argument, "empty grid");

  // Row-major over the axes in the order given; the last axis varies fastest.
  const auto point_at = [&](std::size_t flat) {
    SweepPoint p = base;
    for (std::size_t a = axes.size(); a-- > 0;) {
      const auto& vals = values[a];
      const double v = vals[flat % vals.size()];
      flat /= vals.size();
      const auto& var = axes[a].var;
      if (var == "gamma") p.gamma = v;
      else if (var == "barrier") p.barrier = v;
      else if (var == "k") p.k = v;
      else if (var == "k1") p.k1 = v;
      else if (var == "k2") p.k2 = v;
    }
    return p;
  };

  std::vector<SweepRecord> out(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      out[i] = evaluate_point(point_at(i), i);
      if (out[i].status != "ok") log(LogLevel::info, "grid point " + std::to_string(i) + ": " + out[i].message);
    }
  };
  const int n = std::clamp(jobs, 1, 256);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace qwire::cli
