#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

namespace lrcyc {

using Json = nlohmann::ordered_json;

/// Result of one CLI command or demo. Every numeric claim in `outputs` has a
/// residual and a tolerance under the same key, plus a pass flag.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json residuals = Json::object();
  Json tolerances = Json::object();
  Json pass = Json::object();
  double elapsed_ms = 0.0;

  /// residual <= tolerance, recorded under `key`.
  bool check(const std::string& key, double residual, double tolerance);
  /// Records an exact claim (residual 0 or 1, tolerance 0).
  bool check_exact(const std::string& key, bool holds);
  bool all_pass() const;
  /// With `timing` false elapsed_ms is written as 0 so that the output is
  /// byte-stable.
  Json to_json(bool timing = true) const;
  std::string to_text(bool timing = true) const;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lrcyc
