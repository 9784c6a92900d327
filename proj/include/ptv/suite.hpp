#pragma once

// The full battery of model checks for one system type, collected into a
// report that serialises deterministically for a fixed seed.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptv/system_type.hpp"

namespace ptv {

struct CheckResult {
  std::string name;
  std::string anchor;   ///< the property being checked, in words
  bool expected = true; ///< false for predicted negatives such as cup purity on several blocks
  bool observed = false;
  double residual = 0.0;
  bool pass = false;
  std::string error;    ///< set when the check threw
  double elapsed_ms = 0.0;
};

struct VerificationReport {
  std::string target;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<CheckResult> checks;

  bool pass() const;
  /// Elapsed times are only written when include_timings is set, so the
  /// default output is byte-identical across runs.
  nlohmann::json to_json(bool include_timings = false) const;
  std::string to_text() const;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  /// Bound on the total dimension of any wire bundle; the suite needs A⊗A⊗A.
  int max_dim = 64;
  /// Sample count for the randomised checks.
  int trials = 20;
};

VerificationReport run_postulate_suite(const SystemType& a, const SuiteOptions& opts = {});

}  // namespace ptv
