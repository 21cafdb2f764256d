#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwire/bethe/bethe.hpp"
#include "qwire/errors.hpp"

namespace qwire::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Stable exit-code contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitBadInput = 2,
  kExitResonance = 3,
  kExitCutSingularity = 4,
};

int exit_code(ErrorKind kind);

// Diagnostics on stderr, filtered by QWIRE_LOG = off|error|warn|info|debug (default warn).
enum class LogLevel { off, error, warn, info, debug };
LogLevel log_level();
void log(LogLevel level, std::string_view message);

/// "var=start:stop:count", count >= 1. count = 1 yields just `start`.
/// The caller decides which variable names are meaningful.
struct GridAxis {
  std::string var;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> values() const;
};

/// Throws Error(invalid_argument) on malformed specs or count < 1.
GridAxis parse_grid(std::string_view spec);

/// Shortest round-trip decimal for a double; "nan"/"inf" spelled out.
std::string format_number(double v);

// ---- verify ---------------------------------------------------------------

struct VerifyConfig {
  std::string suite = "all";  // bethe | funceq | curve | all
  int samples = 0;            // 0: suite default (funceq 1000, bethe 200, curve 50)
  std::uint64_t seed = 42;
  std::optional<double> tol;  // overrides the agreement tolerance of identity/oracle checks
};

struct PropertyResult {
  std::string suite;
  std::string name;
  double max_error = 0.0;
  double threshold = 0.0;
  int checked = 0;
  int skipped = 0;
  std::string worst_sample;  // inputs of the worst sample, reproducible from the seed

  bool pass() const { return checked > 0 && max_error <= threshold; }
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<PropertyResult> properties;

  bool pass() const;
  const PropertyResult* find(std::string_view name) const;
};

VerifyReport run_verify(const VerifyConfig& config);
std::string to_json(const VerifyReport& report);

// ---- sweep ----------------------------------------------------------------

struct SweepPoint {
  double gamma = 1.0;
  double barrier = 1.0;
  double k = 1.0;   // cluster case
  double k1 = -2.0;
  double k2 = -1.0;
  bethe::IncidenceCase incidence = bethe::IncidenceCase::same_side;
};

struct SweepRecord {
  std::size_t index = 0;
  SweepPoint point;
  std::string status = "ok";  // or the error tag
  std::string message;
  bethe::AmplitudeSet amps;
  double reflection = 0.0;
  double transmission = 0.0;
  double flux_defect = 0.0;
  double max_residual = 0.0;
  double oracle_mismatch = 0.0;
};

/// Pure evaluation of one grid point; errors are captured in the record.
SweepRecord evaluate_point(const SweepPoint& point, std::size_t index);

/// Cartesian product of the axes over `base`, evaluated on `jobs` workers and
/// returned in grid order.
std::vector<SweepRecord> run_sweep(const SweepPoint& base, const std::vector<GridAxis>& axes,
                                   int jobs);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwire::cli
