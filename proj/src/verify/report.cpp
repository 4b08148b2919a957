#include "ttbar/verify/report.hpp"

#include <cmath>

namespace ttbar::verify {

void CheckRecord::decide() {
  if (!error.empty() || !std::isfinite(residual)) {
    passed = false;
    return;
  }
  passed = comparison == Comparison::below ? residual < threshold : residual > threshold;
}

CheckRecord failed_record(std::string identity, std::string relation, Json inputs, const std::string& error) {
  CheckRecord r;
  r.identity = std::move(identity);
  r.relation = std::move(relation);
  r.inputs = std::move(inputs);
  r.residual = std::nan("");
  r.error = error.empty() ? "unknown error" : error;
  r.passed = false;
  return r;
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : records)
    if (!r.passed) ++n;
  return n;
}

Json VerificationReport::to_json() const {
  Json j = Json::object();
  j["suite"] = suite;
  j["passed"] = passed();
  j["checks"] = records.size();
  j["failures"] = failures();
  Json env = Json::object();
  env["precision"] = precision;
  env["backend"] = backend;
  env["version"] = version;
  j["environment"] = env;
  if (wall_seconds) j["wall-seconds"] = *wall_seconds;
  Json recs = Json::array();
  for (const auto& r : records) {
    Json o = Json::object();
    o["identity"] = r.identity;
    o["relation"] = r.relation;
    o["inputs"] = r.inputs;
    if (!r.details.empty()) o["details"] = r.details;
    o["residual"] = std::isfinite(r.residual) ? Json(r.residual) : Json(nullptr);
    o["threshold"] = r.threshold;
    o["comparison"] = r.comparison == Comparison::below ? "<" : ">";
    o["passed"] = r.passed;
    if (!r.error.empty()) o["error"] = r.error;
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  j["notes"] = notes;
  return j;
}

std::string VerificationReport::dump() const { return to_json().dump(2) + "\n"; }

const char* library_version() { return TTBAR_VERSION; }

}  // namespace ttbar::verify
