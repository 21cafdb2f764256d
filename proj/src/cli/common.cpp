#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <mutex>

#include "qwire/cli/cli.hpp"

namespace qwire::cli {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::resonant_denominator:
    case ErrorKind::pole_of_m:
      return kExitResonance;
    case ErrorKind::lambda_zero_on_cut:
    case ErrorKind::on_cut:
      return kExitCutSingularity;
    case ErrorKind::tolerance_not_met:
    case ErrorKind::no_convergence:
    case ErrorKind::quadrature_failure:
    case ErrorKind::singularity_on_path:
    case ErrorKind::singular_system:
      return kExitPropertyFailure;
    default:
      return kExitBadInput;
  }
}

LogLevel log_level() {
  const char* env = std::getenv("QWIRE_LOG");
  if (env == nullptr) return LogLevel::warn;
  const std::string_view v{env};
  if (v == "off") return LogLevel::off;
  if (v == "error") return LogLevel::error;
  if (v == "info") return LogLevel::info;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::warn;
}

void log(LogLevel level, std::string_view message) {
  if (level == LogLevel::off || level > log_level()) return;
  static std::mutex mu;
  static constexpr std::string_view names[] = {"off", "error", "warn", "info", "debug"};
  const std::lock_guard lock(mu);
  std::cerr << "[qwire " << names[static_cast<int>(level)] << "] " << message << '\n';
}

std::vector<double> GridAxis::values() const {
  std::vector<double> v;
  v.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    v.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }
  return v;
}

namespace {

double parse_double(std::string_view s, std::string_view spec) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::invalid_argument, "malformed grid spec '" + std::string(spec) + "'");
  }
  return v;
}

}  // namespace

GridAxis parse_grid(std::string_view spec) {
  const auto bad = [&] {
    return Error(ErrorKind::invalid_argument,
                 "malformed grid spec '" + std::string(spec) + "' (expected var=start:stop:count)");
  };
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0) throw bad();
  GridAxis g;
  g.var = std::string(spec.substr(0, eq));
  const std::string_view rest = spec.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw bad();
  g.start = parse_double(rest.substr(0, c1), spec);
  g.stop = parse_double(rest.substr(c1 + 1, c2 - c1 - 1), spec);
  const std::string_view n = rest.substr(c2 + 1);
  const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), g.count);
  if (ec != std::errc{} || ptr != n.data() + n.size()) throw bad();
  if (g.count < 1) throw Error(ErrorKind::invalid_argument, "empty grid '" + std::string(spec) + "'");
  return g;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace qwire::cli
