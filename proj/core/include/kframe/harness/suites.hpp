#pragma once

// Randomized verification suites, one per result. A trial is "satisfying"
// when the hypotheses of the result hold on the drawn instance, and a
// violation when a checked conclusion fails there.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kframe/algebra.hpp"
#include "kframe/errors.hpp"

namespace kframe::harness {

struct SuiteInfo {
  std::string id;
  std::string statement;
  int default_trials = 200;
  /// Minimum satisfying trials for the run to count (implication-style results).
  int required_satisfying = 0;
  /// Exploratory; never reports a violation.
  bool experimental = false;
};

struct SuiteReport {
  std::string theorem;
  std::string statement;
  int trials = 0;
  int satisfying = 0;
  int required_satisfying = 0;
  int violations = 0;
  double max_residual = 0.0;
  std::optional<std::string> first_violation;
  bool experimental = false;
  std::optional<double> wall_seconds;

  bool passed() const { return violations == 0 && satisfying >= required_satisfying; }
};

class UnknownTheorem : public Error {
 public:
  using Error::Error;
};

const std::vector<SuiteInfo>& suite_catalog();

/// Runs `trials` trials (the suite default when trials <= 0). Trial t draws
/// from derive_seed(seed, suite index, t). Throws UnknownTheorem.
SuiteReport run_suite(const std::string& id, int trials, std::uint64_t seed, const ToleranceConfig& cfg = {},
                      bool timed = false);

/// Every suite in catalog order.
std::vector<SuiteReport> run_all(int trials, std::uint64_t seed, const ToleranceConfig& cfg = {},
                                 bool timed = false);

}  // namespace kframe::harness
