#include "revfid/harness/config.hpp"

#include <charconv>

#include "revfid/harness/io.hpp"
#include "revfid/tolerances.hpp"

namespace revfid::harness {

ToleranceTable::ToleranceTable()
    : values_{
          {"commuting_equality", 1e-10},
          {"concavity", 1e-9},
          {"expansion_slope_band", 0.3},
          {"flow_endpoint", 1e-5},
          {"fr_sandwich", 1e-8},
          {"geodesic_length", 1e-6},
          {"inequality", 1e-9},
          {"metric_order", 1e-9},
          {"monotonicity", 1e-9},
          {"multiplicativity", 1e-8},
          {"reverse_test_identity", 1e-9},
          {"reverse_test_optimality", 1e-8},
          {"reverse_test_verify", 1e-7},
          {"sandwich", 1e-9},
          {"symmetry", 1e-9},
      } {}

double ToleranceTable::operator[](const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw InputError("unknown tolerance \"" + name + "\"");
  return it->second;
}

void ToleranceTable::set(const std::string& name, double value) {
  const auto it = values_.find(name);
  if (it == values_.end()) throw InputError("--tol: unknown tolerance \"" + name + "\"");
  if (!(value >= 0.0)) throw InputError("--tol " + name + ": value must be non-negative");
  it->second = value;
}

void ToleranceTable::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw InputError("--tol: expected name=value, got \"" + assignment + "\"");
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("--tol " + name + ": cannot parse \"" + text + "\" as a number");
  set(name, value);
}

nlohmann::json ToleranceTable::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : values_) j[k] = v;
  return j;
}

nlohmann::json library_tolerances() {
  namespace t = revfid::tol;
  return {
      {"psd_relative", t::psd_relative},
      {"mean_strict_positive", t::mean_strict_positive},
      {"mean_regularization", t::mean_regularization},
      {"density_input", t::density_input},
      {"prob_sum", t::prob_sum},
      {"kraus_completeness", t::kraus_completeness},
      {"strictly_positive_state", t::strictly_positive_state},
      {"support_membership", t::support_membership},
      {"schur_epsilon", t::schur_epsilon},
      {"dropped_column", t::dropped_column},
      {"flow_start_constraint", t::flow_start_constraint},
      {"flow_reject_residual", t::flow_reject_residual},
  };
}

void RunConfig::validate() const {
  if (trials < 1) throw InputError("--trials must be at least 1");
  if (dims.empty()) throw InputError("--dims must list at least one dimension");
  for (int d : dims)
    if (d < 2) throw InputError("--dims: every dimension must be at least 2");
}

}  // namespace revfid::harness
