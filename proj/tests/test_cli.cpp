#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "qwire/cli/cli.hpp"

using namespace qwire;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qwire");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit code mapping") {
  CHECK(cli::exit_code(ErrorKind::invalid_argument) == cli::kExitBadInput);
  CHECK(cli::exit_code(ErrorKind::degenerate_kinematics) == cli::kExitBadInput);
  CHECK(cli::exit_code(ErrorKind::resonant_denominator) == cli::kExitResonance);
  CHECK(cli::exit_code(ErrorKind::pole_of_m) == cli::kExitResonance);
  CHECK(cli::exit_code(ErrorKind::lambda_zero_on_cut) == cli::kExitCutSingularity);
  CHECK(cli::exit_code(ErrorKind::on_cut) == cli::kExitCutSingularity);
}

TEST_CASE("parse_grid") {
  const auto g = cli::parse_grid("gamma=0.5:2:4");
  CHECK(g.var == "gamma");
  CHECK(g.values() == std::vector<double>{0.5, 1.0, 1.5, 2.0});
  CHECK(cli::parse_grid("k=3:9:1").values() == std::vector<double>{3.0});
  CHECK_THROWS_AS(cli::parse_grid("gamma=1:2"), Error);
  CHECK_THROWS_AS(cli::parse_grid("gamma=1:2:0"), Error);
  CHECK_THROWS_AS(cli::parse_grid("=1:2:3"), Error);
  CHECK_THROWS_AS(cli::parse_grid("gamma=a:2:3"), Error);
}

TEST_CASE("format_number") {
  CHECK(cli::format_number(0.1) == "0.1");
  CHECK(cli::format_number(-0.0) == "0");
  CHECK(cli::format_number(1e-300) == "1e-300");
  CHECK(cli::format_number(0.0 / 0.0) == "nan");
  CHECK(cli::format_number(1.0 / 0.0) == "inf");
}

TEST_CASE("amplitudes: same-side table") {
  const auto r = run({"amplitudes", "--gamma", "1", "--barrier", "1", "--k1", "-2", "--k2", "-1", "--with-oracle"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# qwire 0.1.0 amplitudes", 0) == 0);
  CHECK(r.out.find("# conventions: block=n1=lower-right(g3,g2)") != std::string::npos);
  CHECK(has_line(r.out, "name,re,im,oracle_re,oracle_im,rel_mismatch"));
  CHECK(r.out.find("\nA1,1,0,") != std::string::npos);
  CHECK(r.out.find("\nB8,0,0,") != std::string::npos);
}

TEST_CASE("amplitudes: opposite-side pins") {
  const auto r = run({"amplitudes", "--gamma", "1", "--barrier", "1", "--k1", "-2", "--k2", "-1", "--case",
                      "opposite-side"});
  REQUIRE(r.code == 0);
  CHECK(has_line(r.out, "B5,1,0"));
  CHECK(has_line(r.out, "B8,-1,0"));
  CHECK(has_line(r.out, "A3,0,0"));
}

TEST_CASE("amplitudes: JSON carries version and conventions") {
  const auto r = run({"amplitudes", "--gamma", "1", "--barrier", "1", "--k1", "-2", "--k2", "-1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["version"] == "0.1.0");
  CHECK(j["conventions"]["block"] == "n1=lower-right(g3,g2);n2=upper-left(g1,g4)");
  CHECK(j["amplitudes"]["A1"]["re"] == 1.0);
  CHECK(j["energy"]["re"] == 5.0);
}

TEST_CASE("cluster: energy and structural zeros") {
  const auto r = run({"cluster", "--gamma", "1", "--barrier", "1", "--k", "-3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("lambda=8") != std::string::npos);
  CHECK(has_line(r.out, "A3,0,0"));
  CHECK(has_line(r.out, "B8,0,0"));
}

TEST_CASE("bad input exits with 2") {
  auto r = run({"amplitudes", "--gamma", "1", "--barrier", "1", "--k1", "3", "--k2", "3"});
  CHECK(r.code == cli::kExitBadInput);
  CHECK(r.err.find("degenerate kinematics k1 = k2") != std::string::npos);
  CHECK(run({"cluster", "--gamma", "0", "--barrier", "1", "--k", "-1"}).code == cli::kExitBadInput);
  CHECK(run({"amplitudes", "--format", "xml"}).code == cli::kExitBadInput);
  CHECK(run({"frobnicate"}).code == cli::kExitBadInput);
  CHECK(run({"sweep"}).code == cli::kExitBadInput);
  CHECK(run({"sweep", "--grid", "mass=1:2:3"}).code == cli::kExitBadInput);
  CHECK(run({"sweep", "--grid", "gamma=1:2:0"}).code == cli::kExitBadInput);
  CHECK(run({"verify", "--suite", "everything"}).code == cli::kExitBadInput);
}

TEST_CASE("resonance exits with 3") {
  const auto r = run({"amplitudes", "--gamma", "0", "--barrier", "1", "--k1", "0", "--k2", "-1"});
  CHECK(r.code == cli::kExitResonance);
  CHECK(r.err.find("(gamma - i k1)") != std::string::npos);
}

TEST_CASE("singular point on the cut exits with 4") {
  const auto r = run({"curve", "--which", "2", "--gamma", "1", "--barrier", "1", "--k", "1", "--emit", "g0", "--grid",
                      "x=0.41421356237309503:1:1"});
  CHECK(r.code == cli::kExitCutSingularity);
  CHECK(r.err.find("location 0.41421") != std::string::npos);
}

TEST_CASE("version and help exit with 0") {
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep: rows in grid order, independent of the worker count") {
  const std::vector<std::string> base{"sweep", "--grid", "gamma=0.5:2:3", "--grid", "k1=-3:-2:2"};
  auto one = base, four = base;
  one.insert(one.end(), {"--jobs", "1"});
  four.insert(four.end(), {"--jobs", "4"});
  const auto a = run(one), b = run(four);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  cli::SweepPoint p;
  const auto recs = cli::run_sweep(p, {cli::parse_grid("gamma=0.5:2:3"), cli::parse_grid("k1=-3:-2:2")}, 2);
  REQUIRE(recs.size() == 6);
  CHECK(recs[1].point.gamma == 0.5);
  CHECK(recs[1].point.k1 == -2.0);
  CHECK(recs[2].point.gamma == 1.25);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].index == i);
    CHECK(recs[i].status == "ok");
    CHECK(recs[i].flux_defect < 1e-6);
    CHECK(recs[i].max_residual < 1e-9);
    CHECK(recs[i].oracle_mismatch < 1e-9);
  }
}

TEST_CASE("sweep: failing points are tagged, not fatal") {
  cli::SweepPoint p;
  p.gamma = 0.0;
  const auto recs = cli::run_sweep(p, {cli::parse_grid("k1=-2:0:2")}, 1);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].status == "ok");
  CHECK(recs[1].status == "resonant-denominator");
}

TEST_CASE("verify: deterministic for a fixed seed") {
  const std::vector<std::string> args{"verify", "--suite", "bethe", "--samples", "10", "--seed", "7"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["pass"] == true);
  CHECK(j["seed"] == 7);
  CHECK(run({"verify", "--suite", "bethe", "--samples", "10", "--seed", "8"}).out != a.out);
}

TEST_CASE("verify: an impossible tolerance fails with 1") {
  const auto r = run({"verify", "--suite", "funceq", "--samples", "5", "--tol", "1e-300"});
  CHECK(r.code == cli::kExitPropertyFailure);
  CHECK(r.err.find("FAIL") != std::string::npos);
}

}  // TEST_SUITE
