#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwire/cli/cli.hpp"
#include "qwire/curve/curve.hpp"
#include "qwire/funceq/funceq.hpp"

namespace qwire::cli {

namespace {

using nlohmann::ordered_json;

const std::string kUnitsNote =
    "units: hbar^2/2m = 1; couplings gamma, barrier and momenta in inverse length; energy = k1^2 + k2^2";

std::string conventions_note() {
  return "conventions: block=" + std::string(curve::kBlockConvention) +
         "; jump=" + std::string(curve::kJumpConvention);
}

ordered_json conventions_json() {
  return {{"block", curve::kBlockConvention}, {"jump", curve::kJumpConvention}};
}

// Adding 0.0 turns -0 into +0.
ordered_json complex_json(cplx v) { return {{"re", v.real() + 0.0}, {"im", v.imag() + 0.0}}; }

std::string cn(cplx v) { return format_number(v.real()) + "," + format_number(v.imag()); }

void comment_header(std::ostream& os, std::string_view what, std::initializer_list<std::string> extra = {}) {
  os << "# qwire " << kVersion << ' ' << what << '\n';
  os << "# " << kUnitsNote << '\n';
  os << "# " << conventions_note() << '\n';
  for (const auto& e : extra) os << "# " << e << '\n';
}

std::string case_flag(bethe::IncidenceCase c) {
  switch (c) {
    case bethe::IncidenceCase::same_side: return "same-side";
    case bethe::IncidenceCase::opposite_side: return "opposite-side";
    case bethe::IncidenceCase::cluster: return "cluster";
  }
  return "?";
}

bethe::IncidenceCase parse_case(const std::string& s) {
  if (s == "same-side") return bethe::IncidenceCase::same_side;
  if (s == "opposite-side") return bethe::IncidenceCase::opposite_side;
  return bethe::IncidenceCase::cluster;
}

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.path, "Write to PATH instead of stdout");
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw Error(ErrorKind::invalid_argument, "cannot open output file '" + o.path + "'");
  f << text;
}

// ---- amplitudes / cluster -------------------------------------------------

struct AmplitudeArgs {
  double gamma = 1.0;
  double barrier = 1.0;
  double k1 = -2.0;
  double k2 = -1.0;
  double k = -1.0;
  std::string incidence = "same-side";
  bool with_oracle = false;
  Output output;
};

std::string amplitude_table(const model::ScatteringParams& params, const model::Kinematics& kin,
                            bethe::IncidenceCase c, const bethe::AmplitudeSet& amps, const AmplitudeArgs& a,
                            std::optional<double> cluster_k) {
  std::optional<bethe::OracleResult> oracle;
  double mismatch = 0.0;
  if (a.with_oracle) {
    oracle = bethe::oracle_solve(params, kin, bethe::incidence_pins(c));
    mismatch = bethe::max_relative_mismatch(amps, oracle->amps);
  }
  const auto obs = bethe::observables(amps, c);
  const double lambda = cluster_k ? bethe::cluster_energy(params, *cluster_k) : 0.0;

  std::ostringstream os;
  if (a.output.format == "json") {
    ordered_json j;
    j["version"] = kVersion;
    j["conventions"] = conventions_json();
    j["case"] = case_flag(c);
    ordered_json in{{"gamma", params.gamma}, {"barrier", params.barrier}};
    if (cluster_k) in["k"] = *cluster_k;
    in["k1"] = complex_json(kin.k1);
    in["k2"] = complex_json(kin.k2);
    j["inputs"] = in;
    if (cluster_k) {
      j["lambda"] = lambda;
    } else {
      j["energy"] = complex_json(kin.energy);
    }
    ordered_json table;
    for (int i = 0; i < 16; ++i) table[std::string(model::amplitude_name(i))] = complex_json(amps.flat(i));
    j["amplitudes"] = table;
    j["observables"] = {{"reflection", obs.reflection}, {"transmission", obs.transmission},
                        {"scope", bethe::Observables::scope}};
    if (oracle) {
      ordered_json ot;
      for (int i = 0; i < 16; ++i) ot[std::string(model::amplitude_name(i))] = complex_json(oracle->amps.flat(i));
      j["oracle"] = {{"amplitudes", ot},
                     {"max_mismatch", mismatch},
                     {"residual", oracle->residual},
                     {"condition", oracle->condition}};
    }
    os << j.dump(2) << '\n';
    return os.str();
  }

  std::ostringstream inputs;
  inputs << "case=" << case_flag(c) << " gamma=" << format_number(params.gamma)
         << " barrier=" << format_number(params.barrier);
  if (cluster_k) {
    inputs << " k=" << format_number(*cluster_k) << " lambda=" << format_number(lambda);
  } else {
    inputs << " k1=" << format_number(kin.k1.real()) << " k2=" << format_number(kin.k2.real());
  }
  comment_header(os, "amplitudes",
                 {inputs.str(), "reflection=|A4|^2=" + format_number(obs.reflection) +
                                    " transmission=|B1|^2=" + format_number(obs.transmission) + " scope=" +
                                    std::string(bethe::Observables::scope)});
  if (oracle) {
    os << "# max_oracle_mismatch=" << format_number(mismatch) << " oracle_residual="
       << format_number(oracle->residual) << '\n';
  }
  os << "name,re,im" << (oracle ? ",oracle_re,oracle_im,rel_mismatch" : "") << '\n';
  // Same floor as max_relative_mismatch: entries far below the largest are
  // measured against 1% of it.
  double floor = 1e-300;
  if (oracle) {
    for (int i = 0; i < 16; ++i) floor = std::max(floor, 0.01 * std::abs(oracle->amps.flat(i)));
  }
  for (int i = 0; i < 16; ++i) {
    os << model::amplitude_name(i) << ',' << cn(amps.flat(i));
    if (oracle) {
      const cplx o = oracle->amps.flat(i);
      const double scale = std::max(std::abs(o), floor);
      os << ',' << cn(o) << ',' << format_number(std::abs(amps.flat(i) - o) / scale);
    }
    os << '\n';
  }
  return os.str();
}

int cmd_amplitudes(const AmplitudeArgs& a, std::ostream& out) {
  const model::ScatteringParams params{a.gamma, a.barrier};
  model::validate(params);
  const model::Kinematics kin(a.k1, a.k2);
  model::wave_set(kin);
  const auto c = parse_case(a.incidence);
  const auto amps = bethe::closed_form(params, kin, c);
  emit(a.output, amplitude_table(params, kin, c, amps, a, std::nullopt), out);
  return kExitOk;
}

int cmd_cluster(const AmplitudeArgs& a, std::ostream& out) {
  const model::ScatteringParams params{a.gamma, a.barrier};
  model::validate(params);
  const auto amps = bethe::cluster(params, a.k);
  const auto kin = bethe::cluster_kinematics(params, a.k);
  emit(a.output, amplitude_table(params, kin, bethe::IncidenceCase::cluster, amps, a, a.k), out);
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const VerifyConfig& cfg, const Output& o, std::ostream& out, std::ostream& err) {
  const VerifyReport report = run_verify(cfg);
  emit(o, to_json(report), out);
  for (const auto& p : report.properties) {
    if (!p.pass()) {
      err << "FAIL " << p.suite << '.' << p.name << " max_error=" << format_number(p.max_error)
          << " threshold=" << format_number(p.threshold) << " worst: " << p.worst_sample << '\n';
    }
  }
  return report.pass() ? kExitOk : kExitPropertyFailure;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::vector<std::string> grid;
  std::string observable = "all";
  std::string incidence = "same-side";
  SweepPoint base;
  int jobs = 1;
  Output output;
};

const std::vector<std::string> kObservables{"all", "reflection", "transmission", "flux_defect", "max_residual",
                                            "oracle_mismatch"};

double observable_value(const SweepRecord& r, const std::string& name) {
  if (name == "reflection") return r.reflection;
  if (name == "transmission") return r.transmission;
  if (name == "flux_defect") return r.flux_defect;
  if (name == "max_residual") return r.max_residual;
  return r.oracle_mismatch;
}

cplx record_k1(const SweepRecord& r) {
  return r.point.incidence == bethe::IncidenceCase::cluster ? cplx{r.point.k} : cplx{r.point.k1};
}
cplx record_k2(const SweepRecord& r) {
  return r.point.incidence == bethe::IncidenceCase::cluster ? cplx{0.0, r.point.gamma} : cplx{r.point.k2};
}

std::string sweep_csv(const std::vector<SweepRecord>& recs, const std::string& observable) {
  std::ostringstream os;
  comment_header(os, "sweep",
                 {"energy: k1^2 + k2^2; cluster rows use (k1, k2) = (k, i gamma) so energy = k^2 - gamma^2",
                  "observables: reflection=|A4|^2 transmission=|B1|^2, scope " +
                      std::string(bethe::Observables::scope),
                  "flux_defect=|net arc flux|/gross arc flux at radius 10; max_residual over radii "
                  "0.5,1,2,5,10; oracle_mismatch relative to the matching-system solve"});
  os << "index,case,gamma,barrier,k,k1_re,k1_im,k2_re,k2_im,energy_re,energy_im,status";
  const bool full = observable == "all";
  if (full) {
    for (int i = 0; i < 16; ++i) {
      const auto n = model::amplitude_name(i);
      os << ',' << n << "_re," << n << "_im";
    }
    os << ",reflection,transmission,flux_defect,max_residual,oracle_mismatch";
  } else {
    os << ',' << observable;
  }
  os << ",version,block_convention,jump_convention\n";
  for (const auto& r : recs) {
    const bool cl = r.point.incidence == bethe::IncidenceCase::cluster;
    const cplx k1 = record_k1(r), k2 = record_k2(r);
    os << r.index << ',' << case_flag(r.point.incidence) << ',' << format_number(r.point.gamma) << ','
       << format_number(r.point.barrier) << ',' << (cl ? format_number(r.point.k) : "") << ',' << cn(k1) << ','
       << cn(k2) << ',' << cn(k1 * k1 + k2 * k2) << ',' << r.status;
    const bool ok = r.status == "ok";
    if (full) {
      for (int i = 0; i < 16; ++i) os << ',' << (ok ? cn(r.amps.flat(i)) : ",");
      for (double v : {r.reflection, r.transmission, r.flux_defect, r.max_residual, r.oracle_mismatch}) {
        os << ',' << (ok ? format_number(v) : "");
      }
    } else {
      os << ',' << (ok ? format_number(observable_value(r, observable)) : "");
    }
    os << ',' << kVersion << ',' << curve::kBlockConvention << ',' << curve::kJumpConvention << '\n';
  }
  return os.str();
}

std::string sweep_json(const std::vector<SweepRecord>& recs, const std::string& observable) {
  ordered_json j;
  j["version"] = kVersion;
  j["conventions"] = conventions_json();
  j["units"] = kUnitsNote;
  ordered_json rows = ordered_json::array();
  for (const auto& r : recs) {
    const cplx k1 = record_k1(r), k2 = record_k2(r);
    ordered_json row;
    row["index"] = r.index;
    row["case"] = case_flag(r.point.incidence);
    ordered_json in{{"gamma", r.point.gamma}, {"barrier", r.point.barrier}};
    if (r.point.incidence == bethe::IncidenceCase::cluster) in["k"] = r.point.k;
    in["k1"] = complex_json(k1);
    in["k2"] = complex_json(k2);
    in["energy"] = complex_json(k1 * k1 + k2 * k2);
    row["inputs"] = in;
    row["status"] = r.status;
    if (r.status != "ok") {
      row["message"] = r.message;
    } else if (observable == "all") {
      ordered_json amps;
      for (int i = 0; i < 16; ++i) amps[std::string(model::amplitude_name(i))] = complex_json(r.amps.flat(i));
      row["amplitudes"] = amps;
      row["observables"] = {{"reflection", r.reflection}, {"transmission", r.transmission},
                            {"scope", bethe::Observables::scope}};
      row["diagnostics"] = {{"flux_defect", r.flux_defect}, {"max_residual", r.max_residual},
                            {"oracle_mismatch", r.oracle_mismatch}};
    } else {
      row[observable] = observable_value(r, observable);
    }
    row["version"] = kVersion;
    row["conventions"] = conventions_json();
    rows.push_back(row);
  }
  j["records"] = rows;
  return j.dump(2) + "\n";
}

int cmd_sweep(SweepArgs a, std::ostream& out) {
  std::vector<GridAxis> axes;
  for (const auto& g : a.grid) axes.push_back(parse_grid(g));
  if (axes.empty()) throw Error(ErrorKind::invalid_argument, "empty grid: give at least one --grid");
  a.base.incidence = parse_case(a.incidence);
  const auto recs = run_sweep(a.base, axes, a.jobs);
  emit(a.output, a.output.format == "json" ? sweep_json(recs, a.observable) : sweep_csv(recs, a.observable), out);
  return kExitOk;
}

// ---- curve ----------------------------------------------------------------

struct CurveArgs {
  int which = 1;
  double gamma = 1.0;
  double barrier = 1.0;
  double k = 1.0;
  std::string emit = "branch-points";
  std::string grid = "x=0.3:2.5:12";
  std::string sector = "plus";
  int samples = 100;
  std::uint64_t seed = 42;
  Output output;
};

double closure_distance(const std::vector<cplx>& pts, cplx target) {
  double best = std::numeric_limits<double>::infinity();
  for (cplx q : pts) best = std::min(best, std::abs(q - target));
  return best / (1.0 + std::abs(target));
}

std::string curve_branch_points(const CurveArgs& a, const curve::CurveContext& ctx) {
  const auto& bs = ctx.branches();
  constexpr double kClosureTol = 1e-8;
  struct Row {
    cplx h;
    double residual, iz, inv;
    int cut;
    char end;
  };
  std::vector<Row> rows;
  const auto& poly = ctx.spec().inner;
  for (cplx h : bs.points) {
    Row r{h, std::abs(poly(h)) / numerics::root_residual_bound(poly, h, 1.0),
          closure_distance(bs.points, kI * h), closure_distance(bs.points, 1.0 / h), -1, '-'};
    for (std::size_t c = 0; c < bs.cuts.size(); ++c) {
      if (bs.cuts[c].u == h) r = Row{r.h, r.residual, r.iz, r.inv, static_cast<int>(c), 'u'};
      if (bs.cuts[c].v == h) r = Row{r.h, r.residual, r.iz, r.inv, static_cast<int>(c), 'v'};
    }
    rows.push_back(r);
  }
  const cplx k0 = ctx.curve({cplx{0.0}});
  std::ostringstream os;
  if (a.output.format == "json") {
    ordered_json j;
    j["version"] = kVersion;
    j["conventions"] = conventions_json();
    j["inputs"] = {{"which", a.which}, {"gamma", a.gamma}, {"barrier", a.barrier}, {"k", a.k}};
    j["k_at_zero_plus"] = complex_json(k0);
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      arr.push_back({{"index", i},
                     {"h", complex_json(r.h)},
                     {"scaled_residual", r.residual},
                     {"closure_iz", r.iz <= kClosureTol ? "pass" : "fail"},
                     {"closure_inverse", r.inv <= kClosureTol ? "pass" : "fail"},
                     {"cut", r.cut},
                     {"cut_end", std::string(1, r.end)}});
    }
    j["branch_points"] = arr;
    os << j.dump(2) << '\n';
    return os.str();
  }
  comment_header(os, "branch-points",
                 {"which=" + std::to_string(a.which) + " gamma=" + format_number(a.gamma) +
                      " barrier=" + format_number(a.barrier) + " k=" + format_number(a.k),
                  "scaled_residual=|P(h)|/(max|c|(1+|h|)^16); cut joins the u and v ends of the same index",
                  "K(0,+)=" + cn(k0)});
  os << "index,h_re,h_im,scaled_residual,closure_iz,closure_inverse,cut,cut_end\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << i << ',' << cn(r.h) << ',' << format_number(r.residual) << ','
       << (r.iz <= kClosureTol ? "pass" : "fail") << ',' << (r.inv <= kClosureTol ? "pass" : "fail") << ','
       << r.cut << ',' << r.end << '\n';
  }
  return os.str();
}

std::string curve_discriminant(const CurveArgs& a) {
  const model::ScatteringParams params{a.gamma, a.barrier};
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 2.0 * kPi);
  std::ostringstream os;
  ordered_json arr = ordered_json::array();
  const bool json = a.output.format == "json";
  if (!json) {
    comment_header(os, "discriminant",
                   {"direct=(Tr^2 - 4 Det) of the block times p_i(z)^2; closed=closed-form polynomial",
                    "z uniform in the annulus 0.5 <= |z| <= 2, seed=" + std::to_string(a.seed)});
    os << "index,z_re,z_im,direct_re,direct_im,closed_re,closed_im,rel_err\n";
  }
  const auto c = funceq::scale(params, a.k);
  for (int i = 0; i < a.samples; ++i) {
    const cplx z = std::polar(radius(rng), angle(rng));
    const cplx pd = funceq::block_denominator(c, z, a.which);
    const cplx direct = funceq::discriminant_direct(params, a.k, z, a.which) * pd * pd;
    const cplx closed = funceq::discriminant_closed_form(params, a.k, z, a.which);
    const double rel = std::abs(direct - closed) / std::abs(closed);
    if (json) {
      arr.push_back({{"index", i},
                     {"z", complex_json(z)},
                     {"direct", complex_json(direct)},
                     {"closed", complex_json(closed)},
                     {"rel_err", rel}});
    } else {
      os << i << ',' << cn(z) << ',' << cn(direct) << ',' << cn(closed) << ',' << format_number(rel) << '\n';
    }
  }
  if (json) {
    ordered_json j;
    j["version"] = kVersion;
    j["conventions"] = conventions_json();
    j["inputs"] = {{"which", a.which}, {"gamma", a.gamma}, {"barrier", a.barrier}, {"k", a.k}, {"seed", a.seed}};
    j["samples"] = arr;
    os << j.dump(2) << '\n';
  }
  return os.str();
}

struct G0Row {
  double x = 0.0;
  std::string status = "ok";
  cplx lambda, log_upper, log_lower;
  double error = 0.0, raw_error = 0.0, ratio_error = 0.0, mismatch = 0.0;
};

std::string curve_g0(const CurveArgs& a) {
  const model::ScatteringParams params{a.gamma, a.barrier};
  const GridAxis grid = parse_grid(a.grid);
  if (grid.var != "x") throw Error(ErrorKind::invalid_argument, "g0 grid variable must be x");
  for (double x : grid.values()) {
    if (!(x > 0.0)) throw Error(ErrorKind::invalid_argument, "g0 grid points must lie on the positive half-axis");
  }
  std::vector<G0Row> rows;
  if (a.sector == "minus") {
    for (double x : grid.values()) {
      G0Row r;
      r.x = x;
      r.lambda = 1.0;
      r.log_upper = std::log(curve::g0_eval(params, a.k, a.which, funceq::Symmetry::minus, {cplx{x, 0.0}}));
      r.mismatch = curve::generating_jump_mismatch(params, a.k, a.which, funceq::Symmetry::minus, x);
      rows.push_back(r);
    }
  } else {
    const curve::CurveContext ctx(params, a.k, a.which);
    const curve::G0 g0(ctx);
    for (double x : grid.values()) {
      G0Row r;
      r.x = x;
      try {
        const auto lim = g0.boundary_exponents(x);
        const auto j = g0.jump(x);
        r.lambda = j.lambda;
        r.log_upper = lim.upper;
        r.log_lower = lim.lower;
        r.error = j.error;
        r.raw_error = j.error_ladder[2];
        r.ratio_error = j.ratio_error;
        r.mismatch = g0.jump_mismatch(x);
      } catch (const LambdaZeroOnCut&) {
        throw;
      } catch (const Error& e) {
        r.status = std::string(to_string(e.kind()));
        log(LogLevel::info, "x=" + format_number(x) + ": " + e.what());
      }
      rows.push_back(r);
    }
  }
  std::ostringstream os;
  if (a.output.format == "json") {
    ordered_json j;
    j["version"] = kVersion;
    j["conventions"] = conventions_json();
    j["inputs"] = {{"which", a.which}, {"gamma", a.gamma}, {"barrier", a.barrier},
                   {"k", a.k},         {"sector", a.sector}, {"grid", a.grid}};
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row{{"x", r.x}, {"status", r.status}};
      if (r.status == "ok") {
        row["lambda"] = complex_json(r.lambda);
        row["g0_upper"] = complex_json(std::exp(r.log_upper));
        row["g0_lower"] = complex_json(std::exp(r.log_lower));
        row["log_g0_upper"] = complex_json(r.log_upper);
        row["log_g0_lower"] = complex_json(r.log_lower);
        row["jump_error"] = r.error;
        row["jump_error_eps_1e-4"] = r.raw_error;
        row["ratio_error"] = r.ratio_error;
        row["x_mismatch"] = r.mismatch;
      }
      arr.push_back(row);
    }
    j["values"] = arr;
    os << j.dump(2) << '\n';
    return os.str();
  }
  comment_header(os, "g0",
                 {"which=" + std::to_string(a.which) + " sector=" + a.sector + " gamma=" + format_number(a.gamma) +
                      " barrier=" + format_number(a.barrier) + " k=" + format_number(a.k),
                  "g0_upper/g0_lower: boundary values at x+i0 and x-i0, Richardson-extrapolated from "
                  "eps=1e-2,1e-3,1e-4; log_* are their exponents",
                  "jump_error=|log(g0_upper/g0_lower) - ln lambda| extrapolated; jump_error_eps_1e-4 is the same "
                  "at eps=1e-4; ratio_error=|g0_upper/g0_lower/lambda - 1|",
                  "x_mismatch=||X(x+i0)-N X(x-i0)||/||X(x+i0)||"});
  os << "x,status,lambda_re,lambda_im,g0_upper_re,g0_upper_im,g0_lower_re,g0_lower_im,log_g0_upper_re,"
        "log_g0_upper_im,log_g0_lower_re,log_g0_lower_im,jump_error,jump_error_eps_1e-4,ratio_error,x_mismatch\n";
  for (const auto& r : rows) {
    os << format_number(r.x) << ',' << r.status;
    if (r.status != "ok") {
      os << std::string(14, ',') << '\n';
      continue;
    }
    os << ',' << cn(r.lambda) << ',' << cn(std::exp(r.log_upper)) << ',' << cn(std::exp(r.log_lower)) << ','
       << cn(r.log_upper) << ',' << cn(r.log_lower) << ',' << format_number(r.error) << ','
       << format_number(r.raw_error) << ',' << format_number(r.ratio_error) << ',' << format_number(r.mismatch)
       << '\n';
  }
  return os.str();
}

int cmd_curve(const CurveArgs& a, std::ostream& out) {
  const model::ScatteringParams params{a.gamma, a.barrier};
  model::validate(params);
  if (a.k == 0.0) throw Error(ErrorKind::invalid_argument, "k must be nonzero");
  std::string text;
  if (a.emit == "branch-points") {
    text = curve_branch_points(a, curve::CurveContext(params, a.k, a.which));
  } else if (a.emit == "discriminant") {
    if (!params.non_degenerate()) curve::curve_build(params, a.k, a.which);
    text = curve_discriminant(a);
  } else {
    if (a.sector == "plus" && !params.non_degenerate()) curve::curve_build(params, a.k, a.which);
    text = curve_g0(a);
  }
  emit(a.output, text, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-particle delta-barrier scattering workbench"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  AmplitudeArgs amp;
  auto* c_amp = app.add_subcommand("amplitudes", "Closed-form amplitude table for plane-wave incidence");
  c_amp->add_option("--gamma", amp.gamma, "Inter-particle coupling")->required();
  c_amp->add_option("--barrier", amp.barrier, "Barrier coupling")->required();
  c_amp->add_option("--k1", amp.k1, "First momentum")->required();
  c_amp->add_option("--k2", amp.k2, "Second momentum")->required();
  c_amp->add_option("--case", amp.incidence, "Incidence case")->check(CLI::IsMember({"same-side", "opposite-side"}));
  c_amp->add_flag("--with-oracle", amp.with_oracle, "Also solve the matching system and report the mismatch");
  add_output_options(c_amp, amp.output);

  AmplitudeArgs cl;
  auto* c_cl = app.add_subcommand("cluster", "Bound-pair (surface wave) amplitudes");
  c_cl->add_option("--gamma", cl.gamma, "Inter-particle coupling (> 0)")->required();
  c_cl->add_option("--barrier", cl.barrier, "Barrier coupling")->required();
  c_cl->add_option("--k", cl.k, "Centre-of-mass momentum (nonzero)")->required();
  c_cl->add_flag("--with-oracle", cl.with_oracle, "Also solve the matching system and report the mismatch");
  add_output_options(c_cl, cl.output);

  VerifyConfig vc;
  Output vo;
  double tol = 0.0;
  auto* c_ver = app.add_subcommand("verify", "Run property suites; exit 0 iff all pass");
  c_ver->add_option("--suite", vc.suite, "Suite")->check(CLI::IsMember({"bethe", "funceq", "curve", "all"}));
  c_ver->add_option("--samples", vc.samples, "Random draws per suite (0: suite default)")
      ->check(CLI::NonNegativeNumber);
  c_ver->add_option("--seed", vc.seed, "Random seed");
  auto* tol_opt = c_ver->add_option("--tol", tol, "Agreement tolerance for identity and oracle checks")
                      ->check(CLI::PositiveNumber);
  c_ver->add_option("--out", vo.path, "Write the JSON report to PATH");

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "Evaluate a parameter grid");
  c_sw->add_option("--grid", sw.grid, "var=start:stop:count (repeatable; gamma, barrier, k, k1, k2)");
  c_sw->add_option("--observable", sw.observable, "Column(s) to emit")->check(CLI::IsMember(kObservables));
  c_sw->add_option("--case", sw.incidence, "Incidence case")
      ->check(CLI::IsMember({"same-side", "opposite-side", "cluster"}));
  c_sw->add_option("--gamma", sw.base.gamma, "Fixed inter-particle coupling");
  c_sw->add_option("--barrier", sw.base.barrier, "Fixed barrier coupling");
  c_sw->add_option("--k", sw.base.k, "Fixed cluster momentum");
  c_sw->add_option("--k1", sw.base.k1, "Fixed first momentum");
  c_sw->add_option("--k2", sw.base.k2, "Fixed second momentum");
  c_sw->add_option("--jobs", sw.jobs, "Worker threads")->check(CLI::Range(1, 256));
  add_output_options(c_sw, sw.output);

  CurveArgs cv;
  auto* c_cv = app.add_subcommand("curve", "Branch points, discriminants and g0 of the plus-sector blocks");
  c_cv->add_option("--which", cv.which, "Block")->check(CLI::IsMember({1, 2}));
  c_cv->add_option("--gamma", cv.gamma, "Inter-particle coupling")->required();
  c_cv->add_option("--barrier", cv.barrier, "Barrier coupling")->required();
  c_cv->add_option("--k", cv.k, "Momentum")->required();
  c_cv->add_option("--emit", cv.emit, "Table")->check(CLI::IsMember({"branch-points", "discriminant", "g0"}));
  c_cv->add_option("--grid", cv.grid, "x=start:stop:count cut points for g0");
  c_cv->add_option("--sector", cv.sector, "Symmetry sector for g0")->check(CLI::IsMember({"plus", "minus"}));
  c_cv->add_option("--samples", cv.samples, "Discriminant sample count")->check(CLI::PositiveNumber);
  c_cv->add_option("--seed", cv.seed, "Discriminant sample seed");
  add_output_options(c_cv, cv.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*c_amp) return cmd_amplitudes(amp, out);
    if (*c_cl) return cmd_cluster(cl, out);
    if (*c_ver) {
      if (*tol_opt) vc.tol = tol;
      return cmd_verify(vc, vo, out, err);
    }
    if (*c_sw) return cmd_sweep(sw, out);
    if (*c_cv) return cmd_curve(cv, out);
  } catch (const LambdaZeroOnCut& e) {
    err << "error: " << e.what() << " (location " << format_number(e.location()) << ")\n";
    return kExitCutSingularity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace qwire::cli
