#include "lrcyc/report.hpp"

#include <sstream>

namespace lrcyc {

bool Report::check(const std::string& key, double residual, double tolerance) {
  const bool ok = residual <= tolerance;
  residuals[key] = residual;
  tolerances[key] = tolerance;
  pass[key] = ok;
  return ok;
}

bool Report::check_exact(const std::string& key, bool holds) {
  return check(key, holds ? 0.0 : 1.0, 0.0);
}

bool Report::all_pass() const {
  for (const auto& [k, v] : pass.items())
    if (!v.get<bool>()) return false;
  return true;
}

Json Report::to_json(bool timing) const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["residuals"] = residuals;
  j["tolerances"] = tolerances;
  j["pass"] = pass;
  j["all_pass"] = all_pass();
  j["elapsed_ms"] = timing ? elapsed_ms : 0.0;
  return j;
}

std::string Report::to_text(bool timing) const {
  std::ostringstream os;
  os << command << "\n";
  for (const auto& [k, v] : inputs.items()) os << "  input  " << k << " = " << v.dump() << "\n";
  for (const auto& [k, v] : outputs.items()) os << "  output " << k << " = " << v.dump() << "\n";
  for (const auto& [k, v] : pass.items())
    os << "  check  " << k << ": " << (v.get<bool>() ? "pass" : "FAIL") << " (residual "
       << residuals[k].dump() << ", tolerance " << tolerances[k].dump() << ")\n";
  if (timing) os << "  elapsed_ms " << elapsed_ms << "\n";
  return os.str();
}

}  // namespace lrcyc
