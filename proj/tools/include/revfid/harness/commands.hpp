#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "revfid/harness/config.hpp"

namespace revfid::harness {

enum ExitCode : int { exit_ok = 0, exit_input = 2, exit_domain = 3, exit_failure = 4 };

/// Fixed 12-decimal rendering used for every scalar printed by compute.
std::string format_value(double x);

struct ComputeOptions {
  std::string quantity;
  std::vector<std::string> inputs;
  double alpha = 0.5;
  int control_points = 4;
  int iterations = 20;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
};

const std::vector<std::string>& compute_quantities();

/// Prints the requested quantity; returns the report written to --out.
nlohmann::json cmd_compute(const ComputeOptions& options, std::ostream& out);

struct CounterexampleReport {
  nlohmann::json quantities;
  double defect = 0.0;      // positive means the triangle inequality fails
  bool asserted = false;    // violation was required at this theta
  bool violated = false;
};

CounterexampleReport cmd_counterexample(const std::string& name, double theta, std::ostream& out);

struct GeodesicOptions {
  std::vector<std::string> inputs;  // two endpoint files, or empty with random_dim
  std::optional<int> random_dim;
  std::uint64_t seed = 1;
  std::string metric = "rld";
  std::string method = "closed-form";  // or "flow"
  int samples = 101;
};

struct GeodesicTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  double final_half_length = 0.0;
  double target_half_length = 0.0;  // arccos f_min
};

GeodesicTable cmd_geodesic(const GeodesicOptions& options);
void write_csv(const GeodesicTable& table, std::ostream& out);

}  // namespace revfid::harness
