#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ttbar/verify/config.hpp"

namespace ttbar::verify {

using Json = nlohmann::ordered_json;

/// How a residual is compared with its threshold.
enum class Comparison { below, above };

struct CheckRecord {
  std::string identity;
  /// The relation being checked, in words.
  std::string relation;
  Json inputs = Json::object();
  /// Measured side quantities (fitted slopes, both sides of an identity, ...).
  Json details = Json::object();
  double residual = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::below;
  bool passed = false;
  /// Evaluator error message; a record with an error never passes.
  std::string error;

  /// Sets passed from residual, threshold and comparison.
  void decide();
};

CheckRecord failed_record(std::string identity, std::string relation, Json inputs, const std::string& error);

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> records;
  /// Inputs skipped before evaluation (for example an empty admissible window).
  std::vector<std::string> notes;
  std::string precision;
  std::string backend;
  std::string version;
  std::optional<double> wall_seconds;

  bool passed() const;
  std::size_t failures() const;
  Json to_json() const;
  /// Deterministic: no wall time unless it was requested.
  std::string dump() const;
};

const char* library_version();

}  // namespace ttbar::verify
