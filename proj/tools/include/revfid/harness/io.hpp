#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "revfid/revfid.hpp"

namespace revfid::harness {

/// Malformed input; maps to exit code 2. The message names the location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State files: {"dim": n, "re": [[...]], "im": [[...]]} (im optional) or a
/// probability vector {"p": [...]}, which is embedded diagonally.
DensityMatrix parse_state(const nlohmann::json& j, const std::string& where);
DensityMatrix load_state(const std::string& path);

/// Hermitian matrix in the state layout, without the trace and PSD checks.
HermitianMatrix parse_hermitian(const nlohmann::json& j, const std::string& where);
HermitianMatrix load_hermitian(const std::string& path);

/// Pure state: {"re": [...], "im": [...]} with one-dimensional arrays.
PureState parse_pure(const nlohmann::json& j, const std::string& where);
PureState load_pure(const std::string& path);

ProbDist parse_prob(const nlohmann::json& j, const std::string& where);

nlohmann::json load_json(const std::string& path);

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const DensityMatrix& rho);

}  // namespace revfid::harness
