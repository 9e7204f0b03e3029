#include "revfid/harness/io.hpp"

#include <fstream>
#include <sstream>

namespace revfid::harness {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

Matrix parse_square(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  if (!j.contains("re")) throw InputError(where + ": missing \"re\"");
  const json& re = j.at("re");
  if (!re.is_array() || re.empty()) throw InputError(where + ".re: expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(re.size());
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<long>() != n)
      throw InputError(where + ".dim: does not match the number of rows (" + std::to_string(n) + ")");
  }
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || static_cast<Eigen::Index>(im->size()) != n))
    throw InputError(where + ".im: expected " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::string row = where + ".re[" + std::to_string(r) + "]";
    const json& rr = re.at(static_cast<std::size_t>(r));
    if (!rr.is_array() || static_cast<Eigen::Index>(rr.size()) != n)
      throw InputError(row + ": expected " + std::to_string(n) + " entries");
    const json* ir = nullptr;
    if (im) {
      ir = &im->at(static_cast<std::size_t>(r));
      if (!ir->is_array() || static_cast<Eigen::Index>(ir->size()) != n)
        throw InputError(where + ".im[" + std::to_string(r) + "]: expected " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      const double x = number_at(rr.at(cc), row + "[" + std::to_string(c) + "]");
      const double y = ir ? number_at(ir->at(cc), where + ".im[" + std::to_string(r) + "][" +
                                                       std::to_string(c) + "]")
                          : 0.0;
      m(r, c) = Complex(x, y);
    }
  }
  return m;
}

}  // namespace

ProbDist parse_prob(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("p") || !j.at("p").is_array())
    throw InputError(where + ": expected {\"p\": [...]}");
  std::vector<double> p;
  for (std::size_t i = 0; i < j.at("p").size(); ++i)
    p.push_back(number_at(j.at("p").at(i), where + ".p[" + std::to_string(i) + "]"));
  try {
    return ProbDist(std::move(p));
  } catch (const ValidationError& e) {
    throw InputError(where + ".p: " + e.what());
  }
}

DensityMatrix parse_state(const json& j, const std::string& where) {
  if (j.is_object() && j.contains("p")) return embed(parse_prob(j, where));
  const Matrix m = parse_square(j, where);
  try {
    return DensityMatrix::from_matrix(m);
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

DensityMatrix load_state(const std::string& path) { return parse_state(load_json(path), path); }

HermitianMatrix parse_hermitian(const json& j, const std::string& where) {
  const Matrix m = parse_square(j, where);
  if ((m - m.adjoint()).norm() > 1e-9 * std::max(1.0, m.norm()))
    throw InputError(where + ": matrix is not Hermitian");
  return HermitianMatrix(m);
}

HermitianMatrix load_hermitian(const std::string& path) { return parse_hermitian(load_json(path), path); }

PureState parse_pure(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("re") || !j.at("re").is_array())
    throw InputError(where + ": expected {\"re\": [...], \"im\": [...]}");
  const json& re = j.at("re");
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || im->size() != re.size()))
    throw InputError(where + ".im: length differs from re");
  Vector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) {
    const double x = number_at(re.at(i), where + ".re[" + std::to_string(i) + "]");
    const double y = im ? number_at(im->at(i), where + ".im[" + std::to_string(i) + "]") : 0.0;
    v(static_cast<Eigen::Index>(i)) = Complex(x, y);
  }
  if (v.size() == 0 || v.norm() == 0.0) throw InputError(where + ": zero vector");
  return PureState::normalized(v);
}

PureState load_pure(const std::string& path) { return parse_pure(load_json(path), path); }

json to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

json to_json(const DensityMatrix& rho) { return to_json(rho.matrix()); }

}  // namespace revfid::harness
