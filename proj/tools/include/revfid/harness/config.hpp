#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace revfid::harness {

/// Check thresholds used by the suites, keyed by name. Unknown names are
/// rejected so a typo in --tol cannot silently keep the default.
class ToleranceTable {
 public:
  ToleranceTable();

  double operator[](const std::string& name) const;
  void set(const std::string& name, double value);
  /// Parses "name=value".
  void apply_override(const std::string& assignment);
  const std::map<std::string, double>& entries() const noexcept { return values_; }
  nlohmann::json to_json() const;

 private:
  std::map<std::string, double> values_;
};

/// Compile-time thresholds of the core library, reported for reference.
nlohmann::json library_tolerances();

struct RunConfig {
  std::uint64_t seed = 1;
  int trials = 20;
  std::vector<int> dims{2, 3, 4};
  ToleranceTable tolerances;
  std::optional<std::string> out;

  /// Throws InputError when trials < 1 or a dimension is below 2.
  void validate() const;
};

}  // namespace revfid::harness
