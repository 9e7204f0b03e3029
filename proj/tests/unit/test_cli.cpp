#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "revfid/harness/cli.hpp"
#include "revfid/harness/config.hpp"
#include "revfid/harness/suites.hpp"

using revfid::harness::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(REVFID_FIXTURE_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("revfid_test_" + name)).string();
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>& header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  header.clear();
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) header.push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream r(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(r, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(CliCompute, FminExamples) {
  auto r = cli({"compute", "fmin", fixture("coin_half.json"), fixture("coin_half.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1.000000000000\n");

  r = cli({"compute", "fmin", fixture("coin_half.json"), fixture("coin_80_20.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.948683298051\n");
}

TEST(CliCompute, DeltaMaxBounds) {
  const auto r = cli({"compute", "delta-max-bounds", fixture("coin_half.json"), fixture("coin_80_20.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("lower 0.051316701949"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("upper 0.316227766017"), std::string::npos) << r.out;
}

TEST(CliCompute, OtherQuantities) {
  auto r = cli({"compute", "fmin-pure", fixture("maximally_mixed_qubit.json"), fixture("pure_x.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.707106781187\n");
  r = cli({"compute", "delta-max-pure", fixture("maximally_mixed_qubit.json"), fixture("pure_x.json")});
  EXPECT_EQ(r.out, "0.500000000000\n");
  r = cli({"compute", "sld", fixture("maximally_mixed_qubit.json"), fixture("pauli_x_half.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1.000000000000\n");
  r = cli({"compute", "ffmin", fixture("coin_half.json"), fixture("coin_80_20.json"), "--alpha", "0.3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0.955541847279\n");
}

TEST(CliCompute, ExitCodes) {
  EXPECT_EQ(cli({"compute", "fmin", fixture("singular_qubit.json"), fixture("coin_half.json")}).code, 3);
  EXPECT_EQ(cli({"compute", "fmin", fixture("bad_trace.json"), fixture("coin_half.json")}).code, 2);
  EXPECT_EQ(cli({"compute", "fmin", fixture("malformed.json"), fixture("coin_half.json")}).code, 2);
  EXPECT_EQ(cli({"compute", "fmin", fixture("missing.json"), fixture("coin_half.json")}).code, 2);
  EXPECT_EQ(cli({"compute", "no-such-quantity", fixture("coin_half.json"), fixture("coin_half.json")}).code, 2);
  EXPECT_EQ(cli({"--bogus-flag"}).code, 2);
  EXPECT_EQ(cli({"--tol", "not_a_tolerance=1", "suite", "sandwich"}).code, 2);
  const auto r = cli({"compute", "fmin", fixture("singular_qubit.json"), fixture("coin_half.json")});
  EXPECT_FALSE(r.err.empty());
}

TEST(CliSuite, SandwichHundredTrials) {
  const auto r = cli({"--trials", "100", "--seed", "1", "suite", "sandwich"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("0 failures"), std::string::npos) << r.out;
}

TEST(CliSuite, AllSmoke) {
  const auto path = temp_path("all.json");
  const auto r = cli({"--trials", "1", "--out", path, "suite", "all"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_LT(j["wall_time_seconds"].get<double>(), 300.0);
  EXPECT_TRUE(j["tolerances"].contains("sandwich"));
  EXPECT_TRUE(j["library_tolerances"].is_object());
  std::filesystem::remove(path);
}

TEST(CliSuite, CanaryFails) {
  const auto r = cli({"--trials", "5", "suite", "sandwich", "--canary"});
  EXPECT_EQ(r.code, 4);
}

TEST(CliSuite, ToleranceOverrideReachesReport) {
  const auto path = temp_path("tol.json");
  const auto r = cli({"--trials", "3", "--tol", "sandwich=1e-7", "--out", path, "suite", "sandwich"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_DOUBLE_EQ(j["tolerances"]["sandwich"].get<double>(), 1e-7);
  std::filesystem::remove(path);
}

TEST(CliSuite, DeterministicReports) {
  revfid::harness::RunConfig config;
  config.trials = 10;
  config.seed = 99;
  auto a = revfid::harness::run_suite("monotonicity", config).to_json();
  auto b = revfid::harness::run_suite("monotonicity", config).to_json();
  a.erase("wall_time_seconds");
  b.erase("wall_time_seconds");
  EXPECT_EQ(a, b);
}

TEST(CliSuite, TrialSeedsDiffer) {
  using revfid::harness::trial_seed;
  EXPECT_NE(trial_seed(1, "sandwich", 0), trial_seed(1, "sandwich", 1));
  EXPECT_NE(trial_seed(1, "sandwich", 0), trial_seed(1, "concavity", 0));
  EXPECT_NE(trial_seed(1, "sandwich", 0), trial_seed(2, "sandwich", 0));
  EXPECT_EQ(trial_seed(7, "geometry", 3), trial_seed(7, "geometry", 3));
}

TEST(CliCounterexample, TriangleFminBoundary) {
  const auto r = cli({"counterexample", "triangle-fmin", "--theta", "1.5707963267948966"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("fmin_psi_phi 0.000000000000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("fmin_psi_tau 0.707106781187"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("fmin_tau_phi 0.707106781187"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("defect 0.000000000000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("boundary (not asserted)"), std::string::npos) << r.out;
}

TEST(CliCounterexample, TriangleFminPiOverThree) {
  const auto r = cli({"counterexample", "triangle-fmin", "--theta", "1.0471975511965976"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("fmin_psi_tau 0.732050807569"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("status violated"), std::string::npos) << r.out;
}

TEST(CliCounterexample, TriangleDeltaMax) {
  const auto r = cli({"counterexample", "triangle-deltamax", "--theta", "0.2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("delta_max_psi_phi 1.000000000000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("status violated"), std::string::npos) << r.out;
  EXPECT_EQ(cli({"counterexample", "triangle-deltamax", "--theta", "0"}).code, 2);
  EXPECT_EQ(cli({"counterexample", "no-such", "--theta", "0.2"}).code, 2);
}

TEST(CliGeodesic, IdenticalEndpoints) {
  const auto r = cli({"geodesic", fixture("qubit_a.json"), fixture("qubit_a.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  std::vector<std::string> header;
  const auto rows = parse_csv(r.out, header);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0][header.size() - 2], 0.0);
}

TEST(CliGeodesic, CommutingJMatchesClassicalFisher) {
  const auto r = cli({"geodesic", fixture("coin_half.json"), fixture("coin_80_20.json"), "--samples", "21"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::vector<std::string> header;
  const auto rows = parse_csv(r.out, header);
  ASSERT_EQ(rows.size(), 21u);
  ASSERT_EQ(header[9], "j_rld");
  // Great circle sqrt p_t = (sin((1-t)th) sqrt p + sin(t th) sqrt q) / sin th.
  const double sp[2] = {std::sqrt(0.5), std::sqrt(0.5)}, sq[2] = {std::sqrt(0.8), std::sqrt(0.2)};
  const double th = std::acos(sp[0] * sq[0] + sp[1] * sq[1]);
  for (const auto& row : rows) {
    const double t = row[0];
    double j = 0.0;
    for (int x = 0; x < 2; ++x) {
      const double u = (std::sin((1 - t) * th) * sp[x] + std::sin(t * th) * sq[x]) / std::sin(th);
      const double du = th * (-std::cos((1 - t) * th) * sp[x] + std::cos(t * th) * sq[x]) / std::sin(th);
      j += 4 * du * du;
      EXPECT_NEAR(row[1 + 6 * x], u * u, 1e-12);
    }
    EXPECT_NEAR(row[9], j, 1e-10);
  }
  EXPECT_NEAR(rows.back()[10], 0.643501108793, 1e-9);
}

TEST(CliGeodesic, RandomSeedReproducible) {
  const auto a = cli({"--seed", "6", "geodesic", "--random", "2"});
  const auto b = cli({"--seed", "6", "geodesic", "--random", "2"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto c = cli({"--seed", "7", "geodesic", "--random", "2"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliGeodesic, FlowMethodAndFileOutput) {
  const auto path = temp_path("geo.csv");
  const auto r = cli({"--out", path, "geodesic", fixture("qubit_a.json"), fixture("qubit_b.json"), "--method", "flow"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  std::vector<std::string> header;
  const auto rows = parse_csv(text.str(), header);
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(header.back(), "half_length");
  std::filesystem::remove(path);
  EXPECT_EQ(cli({"geodesic", fixture("qubit_a.json"), fixture("qubit_b.json"), "--metric", "bures"}).code, 2);
}
