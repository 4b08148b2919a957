#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ttbar/verify/report.hpp"

namespace ttbar::verify {

/// thm1, thm1-limit, kernel-oracle, thm1a, zero-inheritance,
/// torus-invariance, dgh-oracle, heat-flow, maass-flow, theta, jacobi,
/// partition, hagedorn, eisenstein-holo; "all" runs every one of them.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

using CheckTask = std::function<std::vector<CheckRecord>()>;

/// Runs the tasks on `threads` workers (each with the given precision as its
/// thread default) and concatenates their records in task order. A task that
/// throws contributes a single failed record.
std::vector<CheckRecord> run_tasks(const std::vector<CheckTask>& tasks, int threads,
                                   numkit::PrecisionMode precision);

/// Validates the config, then executes the selected suite.
VerificationReport run_suite(const RunConfig& config);

/// One CSV row per (alpha, grid point) for a single seed: delta1, delta2,
/// alpha, value_re, value_im, residual, tail, status. status is "ok",
/// "domain-violation" (outside the admissible window) or "error".
/// residual is the S-residual at the point (empty when 1/delta is outside
/// the window).
std::string scan_csv(const RunConfig& config);

/// Rows approaching the upper edge of the window of a seed with negative
/// shift: delta1 = delta_c (1 - r) for r log-spaced in [1e-7, 1e-1], then
/// three points beyond delta_c that carry the domain-violation marker.
std::string hagedorn_csv(const RunConfig& config);

}  // namespace ttbar::verify
