#include "revfid/harness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>

#include "revfid/harness/io.hpp"
#include "revfid/revfid.hpp"

namespace revfid::harness {

std::string format_value(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  os << std::fixed << std::setprecision(12) << x;
  std::string s = os.str();
  if (s == "-0.000000000000") s.erase(0, 1);
  return s;
}

const std::vector<std::string>& compute_quantities() {
  static const std::vector<std::string> q{
      "fidelity", "fmin",  "fmin-geomean", "ffmin", "dr-entropy", "trace-distance", "delta-max-bounds",
      "fmin-pure", "delta-max-pure", "sld", "rld", "fr-estimate", "quasi-entropy"};
  return q;
}

namespace {

void require_inputs(const ComputeOptions& o, std::size_t n, const char* what) {
  if (o.inputs.size() != n)
    throw InputError("compute " + o.quantity + ": expected " + std::to_string(n) + " input files (" + what +
                     "), got " + std::to_string(o.inputs.size()));
}

}  // namespace

nlohmann::json cmd_compute(const ComputeOptions& o, std::ostream& out) {
  const auto& q = o.quantity;
  if (std::find(compute_quantities().begin(), compute_quantities().end(), q) == compute_quantities().end())
    throw InputError("compute: unknown quantity \"" + q + "\"");

  std::vector<std::pair<std::string, double>> values;
  auto two_states = [&]() {
    require_inputs(o, 2, "rho, sigma");
    return std::pair{load_state(o.inputs[0]), load_state(o.inputs[1])};
  };

  if (q == "fidelity") {
    auto [r, s] = two_states();
    values.emplace_back("fidelity", uhlmann_fidelity(r, s));
  } else if (q == "fmin") {
    auto [r, s] = two_states();
    values.emplace_back("fmin", f_min(r, s));
  } else if (q == "fmin-geomean") {
    auto [r, s] = two_states();
    values.emplace_back("fmin_geomean", f_min_via_geomean(r, s));
  } else if (q == "ffmin") {
    auto [r, s] = two_states();
    values.emplace_back("ffmin", f_f_min(r, s, OperatorMonotone::power(o.alpha)));
  } else if (q == "dr-entropy") {
    auto [r, s] = two_states();
    values.emplace_back("dr_entropy", reverse_relative_entropy(r, s));
  } else if (q == "trace-distance") {
    auto [r, s] = two_states();
    values.emplace_back("trace_distance", trace_distance_quantum(r, s));
  } else if (q == "delta-max-bounds") {
    auto [r, s] = two_states();
    const auto b = delta_max_bounds(r, s);
    values = {{"lower", b.lower}, {"upper", b.upper}, {"upper_via_measurement", b.upper_via_measurement}};
  } else if (q == "fmin-pure" || q == "delta-max-pure") {
    require_inputs(o, 2, "rho, pure target");
    const auto r = load_state(o.inputs[0]);
    const auto phi = load_pure(o.inputs[1]);
    if (q == "fmin-pure")
      values.emplace_back("fmin_pure", f_min_pure(r, phi));
    else
      values.emplace_back("delta_max_pure", delta_max_pure(r, phi));
  } else if (q == "sld" || q == "rld") {
    require_inputs(o, 2, "state, velocity");
    const auto r = load_state(o.inputs[0]);
    const auto v = load_hermitian(o.inputs[1]);
    TangentPoint tp = [&] {
      try {
        return TangentPoint(r, v);
      } catch (const Error& e) {
        throw InputError(o.inputs[1] + ": " + e.what());
      }
    }();
    if (q == "sld")
      values.emplace_back("j_sld", sld_fisher(tp).j);
    else
      values.emplace_back("j_rld", rld_fisher(tp).j);
  } else if (q == "fr-estimate") {
    auto [r, s] = two_states();
    const auto est = fr_estimate_report(r, s, o.control_points, o.iterations, o.seed);
    values = {{"fr_estimate", est.value}};
  } else if (q == "quasi-entropy") {
    auto [r, s] = two_states();
    const auto c = quasi_entropy_comparison(r, s, o.alpha);
    values = {{"s_alpha", c.s_alpha}, {"one_minus_f_alpha_min", c.one_minus_f_alpha_min}};
  }

  nlohmann::json report{{"quantity", q}, {"inputs", o.inputs}};
  if (q == "ffmin" || q == "quasi-entropy") report["alpha"] = o.alpha;
  if (q == "fr-estimate") {
    report["control_points"] = o.control_points;
    report["iterations"] = o.iterations;
    report["seed"] = o.seed;
  }
  nlohmann::json vals = nlohmann::json::object();
  for (const auto& [name, v] : values) {
    if (values.size() == 1)
      out << format_value(v) << "\n";
    else
      out << name << " " << format_value(v) << "\n";
    vals[name] = v;
  }
  report["values"] = vals;
  return report;
}

namespace {

struct Triple {
  PureState psi;
  PureState phi;
  DensityMatrix tau;
  double c, s;
};

Triple construction(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Vector psi(2), phi(2);
  psi << c, s;
  phi << c, -s;
  RealVector t(2);
  t << std::abs(c), std::abs(s);
  t /= t.sum();
  return {PureState::normalized(psi), PureState::normalized(phi),
          DensityMatrix::from_matrix(Matrix(t.cast<Complex>().asDiagonal())), c, s};
}

}  // namespace

CounterexampleReport cmd_counterexample(const std::string& name, double theta, std::ostream& out) {
  const double half_pi = std::numbers::pi / 2;
  if (!(theta > 0.0) || theta > half_pi + 1e-12)
    throw InputError("counterexample: theta must lie in (0, pi/2]");
  const auto x = construction(theta);
  CounterexampleReport r;
  std::vector<std::pair<std::string, double>> rows{{"theta", theta}};

  if (name == "triangle-fmin") {
    const double f_pp = f_min_pure(x.psi.projector(), x.phi);
    const double f_pt = f_min_pure(x.tau, x.psi);
    const double f_tp = f_min_pure(x.tau, x.phi);
    const double closed = 1.0 / (std::abs(x.c) + std::abs(x.s));
    r.defect = safe_acos(f_pp) - safe_acos(f_pt) - safe_acos(f_tp);
    rows.insert(rows.end(), {{"fmin_psi_phi", f_pp},
                            {"fmin_psi_tau", f_pt},
                            {"fmin_tau_phi", f_tp},
                            {"closed_form_psi_tau", closed},
                            {"defect", r.defect}});
    r.asserted = theta < half_pi - 1e-9;
    r.violated = r.defect > 0.0;
  } else if (name == "triangle-deltamax") {
    const double d_pp = delta_max_pure(x.psi.projector(), x.phi);
    const double d_pt = delta_max_pure(x.tau, x.psi);
    const double d_tp = delta_max_pure(x.tau, x.phi);
    const double f_pt = f_min_pure(x.tau, x.psi);
    const double bound_sum = 2.0 * std::sqrt(std::max(0.0, 1.0 - f_pt * f_pt));
    const double closed = 2.0 * std::sqrt(1.0 - 1.0 / (1.0 + std::sin(theta)));
    r.defect = d_pp - bound_sum;
    rows.insert(rows.end(), {{"delta_max_psi_phi", d_pp},
                            {"delta_max_psi_tau", d_pt},
                            {"delta_max_tau_phi", d_tp},
                            {"fmin_psi_tau", f_pt},
                            {"upper_bound_sum", bound_sum},
                            {"closed_form_bound_sum", closed},
                            {"exact_defect", d_pp - d_pt - d_tp},
                            {"defect", r.defect}});
    r.asserted = theta <= 0.3;
    r.violated = r.defect > 0.0;
  } else {
    throw InputError("counterexample: unknown construction \"" + name + "\"");
  }

  r.quantities = nlohmann::json::object();
  for (const auto& [k, v] : rows) {
    out << k << " " << format_value(v) << "\n";
    r.quantities[k] = v;
  }
  const char* status = r.violated ? "violated" : (r.asserted ? "NOT violated" : "holds (not asserted)");
  if (!r.violated && !r.asserted && std::abs(r.defect) < 1e-12) status = "boundary (not asserted)";
  out << "status " << status << "\n";
  r.quantities["status"] = status;
  return r;
}

GeodesicTable cmd_geodesic(const GeodesicOptions& o) {
  if (o.metric != "rld" && o.metric != "sld") throw InputError("geodesic: --metric must be rld or sld");
  if (o.method != "closed-form" && o.method != "flow")
    throw InputError("geodesic: --method must be closed-form or flow");
  if (o.samples < 3) throw InputError("geodesic: --samples must be at least 3");

  auto endpoints = [&]() -> std::pair<DensityMatrix, DensityMatrix> {
    if (o.random_dim) {
      if (!o.inputs.empty()) throw InputError("geodesic: give either endpoint files or --random, not both");
      if (*o.random_dim < 2) throw InputError("geodesic: --random dimension must be at least 2");
      Rng rng(o.seed);
      auto a = random_density(*o.random_dim, rng);
      auto b = random_density(*o.random_dim, rng);
      return {std::move(a), std::move(b)};
    }
    if (o.inputs.size() != 2) throw InputError("geodesic: expected two endpoint files");
    return {load_state(o.inputs[0]), load_state(o.inputs[1])};
  }();
  const auto& rho = endpoints.first;
  const auto& sigma = endpoints.second;
  if (rho.dim() != sigma.dim()) throw InputError("geodesic: endpoints differ in dimension");
  const Metric metric = o.metric == "rld" ? Metric::rld : Metric::sld;

  GeodesicTable table;
  const auto d = rho.dim();
  table.header.push_back("t");
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const std::string base = "rho_" + std::to_string(i) + "_" + std::to_string(j);
      table.header.push_back(base + "_re");
      table.header.push_back(base + "_im");
    }
  table.header.insert(table.header.end(), {"j_rld", "length", "half_length"});
  table.target_half_length = safe_acos(f_min(rho, sigma));

  // Samples in the normalized time t in [0, 1].
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<HermitianMatrix> velocities;
  if (o.method == "closed-form") {
    auto c = fmin_geodesic(rho, sigma, o.samples);
    times = std::move(c.times);
    states = std::move(c.states);
    velocities = std::move(*c.velocities);
  } else {
    const FminGeodesic g(rho, sigma);
    if (g.theta() < 1e-12) {
      times = {0.0};
      states = {rho};
      velocities = {HermitianMatrix::zero(d)};
    } else {
      const auto start = fmin_geodesic_start(rho, sigma);
      const int steps = o.samples - 1;
      const auto flow = commutative_geodesic_flow(start.start, start.duration / steps, steps);
      if (flow.halted) throw DomainError("geodesic flow halted: " + flow.diagnostic);
      for (std::size_t k = 0; k < flow.curve.size(); ++k) {
        times.push_back(static_cast<double>(k) / steps);
        states.push_back(flow.curve.states[k]);
        velocities.emplace_back(Matrix(flow.curve.velocities->at(k).matrix() * start.duration));
      }
    }
  }

  double length = 0.0, prev_speed = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<double> row{times[k]};
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        row.push_back(states[k].matrix()(i, j).real());
        row.push_back(states[k].matrix()(i, j).imag());
      }
    const TangentPoint tp(states[k], velocities[k]);
    const double j_rld = rld_fisher(tp).j;
    const double speed = std::sqrt(metric == Metric::rld ? j_rld : sld_fisher(tp).j);
    if (k > 0) length += 0.5 * (times[k] - times[k - 1]) * (speed + prev_speed);
    prev_speed = speed;
    row.insert(row.end(), {j_rld, length, 0.5 * length});
    table.rows.push_back(std::move(row));
  }
  table.final_half_length = 0.5 * length;
  return table;
}

void write_csv(const GeodesicTable& table, std::ostream& out) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  os << "\n" << std::setprecision(17);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  out << os.str();
}

}  // namespace revfid::harness
