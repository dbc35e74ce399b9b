#pragma once

// The verification suite behind `cmverify verify-paper`: one summary row per
// claim, each backed by one or more report payloads.

#include <string>
#include <utility>
#include <vector>

#include "cmv/report.hpp"

namespace cmv {

struct SuiteResult {
  SuiteSummary summary;
  std::vector<std::pair<std::string, Payload>> reports;  ///< file stem -> payload, in run order
};

/// Quick mode: log grid [0.01, 1000] with 40 points and n_max = 4 instead of
/// config.grid / config.n_max, and fewer orders in the inequality checks.
/// A check that throws is recorded as inconclusive; the suite always completes.
SuiteResult run_verification_suite(const RunConfig& config, bool quick, unsigned threads = 0);

/// Grid and n_max actually used by the suite for `config`.
RunConfig suite_config(const RunConfig& config, bool quick);

}  // namespace cmv
