#include "revfid/harness/cli.hpp"

#include <fstream>
#include <sstream>
#include <ostream>

#include "CLI11.hpp"
#include "revfid/harness/commands.hpp"
#include "revfid/harness/io.hpp"
#include "revfid/harness/suites.hpp"

namespace revfid::harness {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError(path + ": cannot open for writing");
  f << text;
  if (!f) throw InputError(path + ": write failed");
}

void write_json(const std::string& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

void print_suite(const SuiteReport& r, std::ostream& out) {
  for (const auto& [name, s] : r.invariants)
    out << name << " max_residual " << s.max_residual << " tolerance " << s.tolerance << " checks " << s.checks
        << "\n";
  for (const auto& f : r.failures)
    out << "FAIL " << f.invariant << " trial " << f.trial << " seed " << f.seed << " residual " << f.residual
        << "\n";
  out << "suite " << r.suite << ": " << r.trials << " trials, " << r.failures.size() << " failures, "
      << r.wall_time_seconds << " s\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reverse-test fidelities, divergences and information geometry", "revfid"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  int trials = 20;
  std::vector<int> dims{2, 3, 4};
  std::vector<std::string> tol_overrides;
  std::string out_path;
  app.add_option("--seed", seed, "Seed for all randomized work");
  app.add_option("--trials", trials, "Trials per suite");
  app.add_option("--dims", dims, "Dimensions cycled through by the suites")->delimiter(',');
  app.add_option("--tol", tol_overrides, "Tolerance override name=value (repeatable)");
  app.add_option("--out", out_path, "Report (JSON) or trajectory (CSV) output path");

  ComputeOptions co;
  auto* compute = app.add_subcommand("compute", "Evaluate a quantity on state files");
  compute->add_option("quantity", co.quantity, "Quantity name")->required();
  compute->add_option("inputs", co.inputs, "Input files");
  compute->add_option("--alpha", co.alpha, "Exponent for ffmin and quasi-entropy");
  compute->add_option("--control-points", co.control_points, "fr-estimate interior knots");
  compute->add_option("--iterations", co.iterations, "fr-estimate coordinate sweeps");

  std::string suite_name;
  bool canary = false;
  auto* suite = app.add_subcommand("suite", "Run a randomized property suite");
  suite->add_option("name", suite_name, "Suite name")->required();
  suite->add_flag("--canary", canary, "Negate every inequality (harness self-test)");

  std::string cx_name;
  double theta = 0.0;
  auto* cx = app.add_subcommand("counterexample", "Evaluate a triangle-inequality counterexample");
  cx->add_option("name", cx_name, "triangle-fmin or triangle-deltamax")->required();
  cx->add_option("--theta", theta, "Angle in (0, pi/2]")->required();

  GeodesicOptions go;
  int random_dim = 0;
  auto* geo = app.add_subcommand("geodesic", "Trace the F_min geodesic to CSV");
  geo->add_option("inputs", go.inputs, "Endpoint files");
  geo->add_option("--random", random_dim, "Use a seeded random pair of this dimension");
  geo->add_option("--metric", go.metric, "Length metric: rld or sld");
  geo->add_option("--method", go.method, "closed-form or flow");
  geo->add_option("--samples", go.samples, "Number of samples");

  std::vector<std::string> argv_store{"revfid"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "revfid: " << e.what() << "\n";
    return exit_input;
  }

  try {
    if (compute->parsed()) {
      co.seed = seed;
      const auto report = cmd_compute(co, out);
      if (!out_path.empty()) write_json(out_path, report);
      return exit_ok;
    }
    if (suite->parsed()) {
      RunConfig config;
      config.seed = seed;
      config.trials = trials;
      config.dims = dims;
      for (const auto& t : tol_overrides) config.tolerances.apply_override(t);
      if (!out_path.empty()) config.out = out_path;
      const auto report = run_suite(suite_name, config, canary);
      print_suite(report, out);
      if (config.out) write_json(*config.out, report.to_json());
      return report.passed() ? exit_ok : exit_failure;
    }
    if (cx->parsed()) {
      const auto r = cmd_counterexample(cx_name, theta, out);
      if (!out_path.empty())
        write_json(out_path, {{"name", cx_name}, {"quantities", r.quantities}, {"asserted", r.asserted},
                              {"violated", r.violated}});
      return r.asserted && !r.violated ? exit_failure : exit_ok;
    }
    if (geo->parsed()) {
      go.seed = seed;
      if (random_dim != 0) go.random_dim = random_dim;
      const auto table = cmd_geodesic(go);
      std::ostringstream csv;
      write_csv(table, csv);
      if (out_path.empty())
        out << csv.str();
      else
        write_text(out_path, csv.str());
      return exit_ok;
    }
  } catch (const InputError& e) {
    err << "revfid: input error: " << e.what() << "\n";
    return exit_input;
  } catch (const nlohmann::json::exception& e) {
    err << "revfid: input error: " << e.what() << "\n";
    return exit_input;
  } catch (const revfid::Error& e) {
    err << "revfid: domain error: " << e.what() << "\n";
    return exit_domain;
  }
  return exit_input;
}

}  // namespace revfid::harness
