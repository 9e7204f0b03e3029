#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "revfid/harness/config.hpp"

namespace revfid::harness {

struct Failure {
  std::string invariant;
  int trial = 0;
  std::uint64_t seed = 0;  // seed of the trial's generator
  double residual = 0.0;
};

struct InvariantStats {
  double max_residual = 0.0;  // largest signed violation seen; <= tolerance means pass
  double tolerance = 0.0;
  int checks = 0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<int> dims;
  std::vector<Failure> failures;
  std::map<std::string, InvariantStats> invariants;
  double wall_time_seconds = 0.0;
  nlohmann::json tolerances;

  bool passed() const noexcept { return failures.empty(); }
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Seed of trial `trial` of suite `suite` under a run seed.
std::uint64_t trial_seed(std::uint64_t run_seed, const std::string& suite, int trial);

/// `canary` negates every inequality so a healthy library must fail.
SuiteReport run_suite(const std::string& name, const RunConfig& config, bool canary = false);

}  // namespace revfid::harness
