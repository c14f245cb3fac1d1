#pragma once

// Verification suites driven by a RunConfig; each produces named checks
// with threshold, observed value and verdict.

#include <string>
#include <vector>

#include "fsol/config.hpp"
#include "fsol/lauricella.hpp"

namespace fsol {

struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> checks;

  /// True when every asserted check passes.
  [[nodiscard]] bool all_pass() const;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"pde", "singularity", "boundary", "identity", "decomposition"};
  return names;
}

/// Runs one suite ("pde", "singularity", "boundary", "identity",
/// "decomposition") or every suite ("all").
std::vector<SuiteReport> run_suites(const RunConfig& cfg, const std::string& which,
                                    Execution exec = Execution::Parallel);

SuiteReport pde_suite(const RunConfig& cfg, Execution exec = Execution::Parallel);
SuiteReport singularity_suite(const RunConfig& cfg);
SuiteReport boundary_suite(const RunConfig& cfg);
SuiteReport identity_suite(const RunConfig& cfg);
SuiteReport decomposition_suite(const RunConfig& cfg);

/// Random F_A parameter sets: a, b_i in (0, 1.5), c_i in (0.5, 2), x_i >= 0
/// with sum x_i <= max_abs_sum.
std::vector<LauricellaParams> random_fa_params(int n, int count, std::uint64_t seed, double max_abs_sum = 0.6);

std::string report_json(const std::vector<SuiteReport>& reports);
std::string report_text(const std::vector<SuiteReport>& reports);

}  // namespace fsol
