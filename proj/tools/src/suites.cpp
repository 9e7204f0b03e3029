#include "revfid/harness/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "revfid/harness/io.hpp"
#include "revfid/revfid.hpp"

namespace revfid::harness {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Recorder {
 public:
  Recorder(SuiteReport& report, const ToleranceTable& tol, bool canary)
      : report_(report), tol_(tol), canary_(canary) {}

  void begin_trial(int trial, std::uint64_t seed) {
    trial_ = trial;
    seed_ = seed;
  }

  // Records a violation measure; passes when residual <= tolerance.
  void residual(const std::string& invariant, const std::string& tol_name, double r) {
    const double tol = tol_[tol_name];
    auto [it, fresh] = report_.invariants.try_emplace(invariant);
    auto& s = it->second;
    if (fresh) s.max_residual = -std::numeric_limits<double>::infinity();
    s.tolerance = tol;
    ++s.checks;
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    s.max_residual = std::max(s.max_residual, r);
    if (r > tol) report_.failures.push_back({invariant, trial_, seed_, r});
  }

  // a <= b
  void leq(const std::string& invariant, const std::string& tol_name, double a, double b) {
    residual(invariant, tol_name, canary_ ? b - a : a - b);
  }

  void close(const std::string& invariant, const std::string& tol_name, double a, double b) {
    residual(invariant, tol_name, canary_ ? -std::abs(a - b) + 1.0 : std::abs(a - b));
  }

 private:
  SuiteReport& report_;
  const ToleranceTable& tol_;
  bool canary_;
  int trial_ = 0;
  std::uint64_t seed_ = 0;
};

bool strictly_positive(const DensityMatrix& rho) { return rho.min_eigenvalue() > 1e-8; }

ProbDist random_prob(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    s += x;
  }
  for (auto& x : w) x /= s;
  return ProbDist(std::move(w), 1e-10);
}

using TrialFn = std::function<void(Recorder&, Rng&, int dim, int trial)>;

void monotonicity_trial(Recorder& r, Rng& rng, int d, int) {
  const auto rho = random_density(d, rng);
  const auto sigma = random_density(d, rng);
  const auto ch = random_channel(d, d, 2, rng);
  const auto rho2 = apply_channel(ch, rho);
  const auto sigma2 = apply_channel(ch, sigma);
  r.leq("fidelity_nondecreasing", "monotonicity", uhlmann_fidelity(rho, sigma), uhlmann_fidelity(rho2, sigma2));
  r.leq("trace_distance_nonincreasing", "monotonicity", trace_distance_quantum(rho2, sigma2),
        trace_distance_quantum(rho, sigma));
  if (!strictly_positive(rho2) || !strictly_positive(sigma2)) return;
  r.leq("fmin_nondecreasing", "monotonicity", f_min(rho, sigma), f_min(rho2, sigma2));
  for (double a : {0.25, 0.5, 0.75}) {
    const auto f = OperatorMonotone::power(a);
    r.leq("ffmin_nondecreasing_" + std::to_string(a).substr(0, 4), "monotonicity", f_f_min(rho, sigma, f),
          f_f_min(rho2, sigma2, f));
  }
  r.leq("dr_entropy_nonincreasing", "monotonicity", reverse_relative_entropy(rho2, sigma2),
        reverse_relative_entropy(rho, sigma));
}

void sandwich_trial(Recorder& r, Rng& rng, int d, int) {
  const auto rho = random_density(d, rng);
  const auto sigma = random_density(d, rng);
  const double fm = f_min(rho, sigma);
  const double f = uhlmann_fidelity(rho, sigma);
  r.leq("fmin_le_fidelity", "sandwich", fm, f);
  r.close("fmin_dual_route", "sandwich", fm / f_min_via_geomean(rho, sigma), 1.0);
  r.close("fmin_symmetry", "symmetry", fm, f_min(sigma, rho));

  const double delta = trace_distance_quantum(rho, sigma);
  r.leq("one_minus_f_le_trace_distance", "inequality", 1.0 - f, delta);
  r.leq("trace_distance_le_sqrt", "inequality", delta, std::sqrt(std::max(0.0, 1.0 - f * f)));
  r.leq("dr_entropy_pinsker", "inequality", 0.5 * (1.0 - fm) * (1.0 - fm), reverse_relative_entropy(rho, sigma));
  const auto b = delta_max_bounds(rho, sigma);
  r.leq("delta_max_lower_le_measured", "inequality", b.lower, b.upper_via_measurement);
  r.leq("delta_max_measured_le_upper", "inequality", b.upper_via_measurement, b.upper);
  const auto q = quasi_entropy_comparison(rho, sigma, 0.5);
  r.leq("quasi_entropy_le_one_minus_ffmin", "inequality", q.s_alpha, q.one_minus_f_alpha_min);

  const auto p = random_prob(static_cast<std::size_t>(d), rng);
  const auto pq = random_prob(static_cast<std::size_t>(d), rng);
  const auto er = embed(p), es = embed(pq);
  const double fc = classical_fidelity(p, pq);
  r.close("commuting_fmin_classical", "commuting_equality", f_min(er, es), fc);
  r.close("commuting_fidelity_classical", "commuting_equality", uhlmann_fidelity(er, es), fc);
}

void concavity_trial(Recorder& r, Rng& rng, int d, int trial) {
  const int m = 2 + trial % 3;
  const auto lam = random_prob(static_cast<std::size_t>(m), rng);
  const auto mu = random_prob(static_cast<std::size_t>(m), rng);
  Matrix rho = Matrix::Zero(d, d), sigma = Matrix::Zero(d, d);
  double rhs = 0.0;
  for (int y = 0; y < m; ++y) {
    const auto a = random_density(d, rng);
    const auto b = random_density(d, rng);
    const auto yy = static_cast<std::size_t>(y);
    rho += lam[yy] * a.matrix();
    sigma += mu[yy] * b.matrix();
    rhs += std::sqrt(lam[yy] * mu[yy]) * f_min(a, b);
  }
  r.leq("fmin_strong_joint_concavity", "concavity", rhs,
        f_min(DensityMatrix::from_matrix(rho), DensityMatrix::from_matrix(sigma)));

  const double l = rng.uniform();
  const auto r0 = random_density(d, rng), r1 = random_density(d, rng);
  const auto s0 = random_density(d, rng), s1 = random_density(d, rng);
  const auto rm = DensityMatrix::from_matrix(l * r0.matrix() + (1 - l) * r1.matrix());
  const auto sm = DensityMatrix::from_matrix(l * s0.matrix() + (1 - l) * s1.matrix());
  for (double a : {0.25, 0.5, 0.75}) {
    const auto f = OperatorMonotone::power(a);
    r.leq("ffmin_joint_concavity_" + std::to_string(a).substr(0, 4), "concavity",
          l * f_f_min(r0, s0, f) + (1 - l) * f_f_min(r1, s1, f), f_f_min(rm, sm, f));
  }
  const auto phi = random_pure(d, rng);
  r.leq("delta_max_pure_convexity", "concavity", delta_max_pure(rm, phi),
        l * delta_max_pure(r0, phi) + (1 - l) * delta_max_pure(r1, phi));
}

void multiplicativity_trial(Recorder& r, Rng& rng, int d, int) {
  const int dd = std::min(d, 3);
  const auto rho = random_density(dd, rng), sigma = random_density(dd, rng);
  const auto rho2 = random_density(2, rng), sigma2 = random_density(2, rng);
  r.close("fmin_tensor_product", "multiplicativity", f_min(tensor(rho, rho2), tensor(sigma, sigma2)),
          f_min(rho, sigma) * f_min(rho2, sigma2));
  const double fm = f_min(rho, sigma);
  r.close("fmin_tensor_square", "multiplicativity", f_min(tensor(rho, rho), tensor(sigma, sigma)), fm * fm);
}

void geometry_trial(Recorder& r, Rng& rng, int d, int) {
  const auto rho = random_density(d, rng);
  // ||rho^-1/2 drho rho^-1/2|| = 1/4 keeps the fitted step sizes asymptotic.
  const TangentPoint tp(rho, random_tangent(rho, 0.25, rng));
  const auto fr = fisher_report(tp);
  r.leq("j_rld_ge_j_sld", "metric_order", fr.j_sld, fr.j_rld);
  const auto tre = tangent_reverse_estimation(tp);
  r.close("tangent_reverse_fisher", "reverse_test_identity", classical_fisher(tre.p, tre.dp) / fr.j_rld, 1.0);

  const auto ex = expansion_check(tp, default_expansion_eps());
  if (ex.generic_fmin) r.close("expansion_order_fmin", "expansion_slope_band", ex.slope_fmin, 3.0);
  if (ex.generic_uhlmann) r.close("expansion_order_fidelity", "expansion_slope_band", ex.slope_uhlmann, 3.0);

  const auto q0 = random_density(2, rng), q1 = random_density(2, rng);
  const double theta = std::acos(std::min(1.0, f_min(q0, q1)));
  const auto curve = fmin_geodesic(q0, q1, 101);
  r.close("geodesic_half_length", "geodesic_length", 0.5 * curve_length(curve, Metric::rld), theta);
  const auto start = fmin_geodesic_start(q0, q1);
  const int steps = 1000;
  const auto flow = commutative_geodesic_flow(start.start, start.duration / steps, steps);
  r.residual("flow_endpoint", "flow_endpoint",
             flow.halted ? std::numeric_limits<double>::infinity()
                         : trace_norm(flow.curve.states.back().matrix() - q1.matrix()));
  const double est = fr_estimate(q0, q1, 2, 4, rng.next_u64());
  r.leq("fr_ge_fmin", "fr_sandwich", f_min(q0, q1), est);
  r.leq("fr_le_fidelity", "fr_sandwich", est, uhlmann_fidelity(q0, q1));
}

void reverse_test_trial(Recorder& r, Rng& rng, int d, int) {
  const auto rho = random_density(d, rng), sigma = random_density(d, rng);
  const double fm = f_min(rho, sigma);
  const auto mt = minimal_reverse_test(rho, sigma);
  r.close("minimal_fidelity_eq_fmin", "reverse_test_identity", mt.fidelity(), fm);
  const auto v = verify_reverse_test(mt, rho, sigma, 1e-7);
  r.residual("minimal_reconstruction", "reverse_test_verify", std::max(v.rho_residual, v.sigma_residual));
  const auto t = transition_operator(rho, sigma);
  for (int k = 0; k < 3; ++k) {
    const auto a = sample_contraction(t, rng.next_u64());
    const auto g = general_reverse_test(rho, sigma, a, 2 * d);
    r.leq("general_le_minimal", "reverse_test_optimality", g.test.fidelity(), mt.fidelity());
    const auto gv = verify_reverse_test(g.test, rho, sigma, 1e-7);
    r.residual("general_reconstruction", "reverse_test_verify", std::max(gv.rho_residual, gv.sigma_residual));
  }
  const auto hp = hidden_pair(rho, sigma);
  r.close("hidden_pair_fidelity", "reverse_test_identity", uhlmann_fidelity(hp.rho_prime, hp.sigma_prime), fm);
  const auto phi = random_pure(d, rng);
  const auto pt = pure_target_reverse_test(rho, phi);
  const auto pv = verify_reverse_test(pt.test, rho, phi.projector(), 1e-7);
  r.residual("pure_target_reconstruction", "reverse_test_verify", std::max(pv.rho_residual, pv.sigma_residual));
  r.close("pure_target_fidelity", "reverse_test_identity", pt.test.fidelity(), f_min_pure(rho, phi));
}

const std::map<std::string, TrialFn>& registry() {
  static const std::map<std::string, TrialFn> r{
      {"monotonicity", monotonicity_trial},   {"sandwich", sandwich_trial},
      {"concavity", concavity_trial},         {"multiplicativity", multiplicativity_trial},
      {"geometry", geometry_trial},           {"reverse-tests", reverse_test_trial},
  };
  return r;
}

void run_into(SuiteReport& report, const std::string& name, const std::string& prefix, const RunConfig& config,
              bool canary) {
  const auto& fn = registry().at(name);
  SuiteReport local;
  Recorder rec(local, config.tolerances, canary);
  for (int t = 0; t < config.trials; ++t) {
    const auto seed = trial_seed(config.seed, name, t);
    Rng rng(seed);
    rec.begin_trial(t, seed);
    const int d = config.dims[static_cast<std::size_t>(t) % config.dims.size()];
    fn(rec, rng, d, t);
  }
  for (auto& [k, v] : local.invariants) report.invariants[prefix + k] = v;
  for (auto& f : local.failures) {
    f.invariant = prefix + f.invariant;
    report.failures.push_back(std::move(f));
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"monotonicity", "sandwich",      "concavity", "multiplicativity",
                                              "geometry",     "reverse-tests", "all"};
  return names;
}

std::uint64_t trial_seed(std::uint64_t run_seed, const std::string& suite, int trial) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ull;
  return splitmix(splitmix(run_seed ^ h) + static_cast<std::uint64_t>(trial));
}

SuiteReport run_suite(const std::string& name, const RunConfig& config, bool canary) {
  config.validate();
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw InputError("unknown suite \"" + name + "\"");
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = name;
  report.seed = config.seed;
  report.trials = config.trials;
  report.dims = config.dims;
  report.tolerances = config.tolerances.to_json();
  if (name == "all") {
    for (const auto& [n, fn] : registry()) run_into(report, n, n + "/", config, canary);
  } else {
    run_into(report, name, "", config, canary);
  }
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json inv = nlohmann::json::object();
  for (const auto& [k, v] : invariants)
    inv[k] = {{"max_residual", v.max_residual}, {"tolerance", v.tolerance}, {"checks", v.checks}};
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back({{"invariant", f.invariant}, {"trial", f.trial}, {"seed", f.seed}, {"residual", f.residual}});
  return {{"suite", suite},
          {"seed", seed},
          {"trials", trials},
          {"dims", dims},
          {"passed", passed()},
          {"invariants", inv},
          {"failures", fails},
          {"wall_time_seconds", wall_time_seconds},
          {"tolerances", tolerances},
          {"library_tolerances", library_tolerances()}};
}

}  // namespace revfid::harness
