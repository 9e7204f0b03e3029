#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "revfid/states.hpp"

namespace revfid {

/// A state together with a traceless Hermitian velocity.
class TangentPoint {
 public:
  TangentPoint(DensityMatrix state, HermitianMatrix velocity);

  const DensityMatrix& state() const noexcept { return state_; }
  const HermitianMatrix& velocity() const noexcept { return velocity_; }
  Eigen::Index dim() const noexcept { return state_.dim(); }

 private:
  DensityMatrix state_;
  HermitianMatrix velocity_;
};

struct SldFisher {
  HermitianMatrix l;      // solves drho = (L rho + rho L) / 2
  double j = 0.0;         // tr L^2 rho
  double residual = 0.0;  // Frobenius residual of the Lyapunov equation
};

struct RldFisher {
  Matrix l;       // drho rho^-1
  double j = 0.0; // tr drho rho^-1 drho
};

struct FisherReport {
  double j_sld = 0.0;
  double j_rld = 0.0;
  HermitianMatrix sld;
  Matrix rld;
};

SldFisher sld_fisher(const TangentPoint& tp);
RldFisher rld_fisher(const TangentPoint& tp);
FisherReport fisher_report(const TangentPoint& tp);

/// sum dp^2 / p; zero-probability entries must carry zero derivative,
/// otherwise the result is +inf.
double classical_fisher(const ProbDist& p, const SignedVector& dp);

struct TangentReverseEstimation {
  Matrix prep;  // unit-norm columns phi_x
  ProbDist p;
  SignedVector dp;
  double state_residual = 0.0;     // || N diag(p) N^dagger - rho ||_F
  double velocity_residual = 0.0;  // || N diag(dp) N^dagger - drho ||_F
};

/// Frame of rho^-1/2 drho rho^-1/2; the classical Fisher information of
/// (p, dp) equals the RLD information.
TangentReverseEstimation tangent_reverse_estimation(const TangentPoint& tp);

enum class Metric { sld, rld };

double fisher_information(const TangentPoint& tp, Metric metric);

/// Sampled path. Times are strictly increasing; velocities, when present,
/// are exact derivatives at the samples.
struct Curve {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::optional<std::vector<HermitianMatrix>> velocities;

  std::size_t size() const noexcept { return states.size(); }
  /// Throws ValidationError on a malformed grid.
  void check() const;
};

/// Velocities by central differences, one-sided at the ends.
std::vector<HermitianMatrix> finite_difference_velocities(const Curve& curve);

/// int sqrt(J_t) dt by composite Simpson on the sample grid (trapezoid on a
/// trailing odd interval).
double curve_length(const Curve& curve, Metric metric);

/// Smooth path given as t -> (rho_t, drho_t/dt) on [0, 1].
using PathFunction = std::function<TangentPoint(double)>;

/// int_0^1 sqrt(J_t) dt by composite 5-point Gauss-Legendre over `panels`
/// equal panels. Nodes are interior, so singular endpoints are tolerated.
double path_length(const PathFunction& path, Metric metric, int panels);

/// Commutative RLD geodesic between rho and sigma: the classical great
/// circle between the distributions of the minimal reverse test, pushed
/// through its preparation.
class FminGeodesic {
 public:
  FminGeodesic(const DensityMatrix& rho, const DensityMatrix& sigma);

  double theta() const noexcept { return theta_; }  // arccos f_min
  double length() const noexcept { return 2.0 * theta_; }
  const Matrix& prep() const noexcept { return prep_; }
  /// sqrt(p_t) and its t-derivative.
  RealVector amplitude(double t) const;
  RealVector amplitude_velocity(double t) const;
  DensityMatrix state(double t) const;
  HermitianMatrix velocity(double t) const;
  TangentPoint tangent(double t) const { return TangentPoint(state(t), velocity(t)); }
  /// Unit-speed RLD matrix at t = 0: N diag(b / a) N^-1.
  Matrix initial_rld() const;

 private:
  Matrix prep_;
  RealVector a_;
  RealVector sqrt_q_;
  double theta_ = 0.0;
};

/// Samples of FminGeodesic on a uniform grid of n_samples points in [0, 1],
/// with exact velocities. rho = sigma gives a single-sample curve.
Curve fmin_geodesic(const DensityMatrix& rho, const DensityMatrix& sigma, int n_samples);

class GeodesicState {
 public:
  /// Requires rho L^dagger = L rho within 1e-8.
  GeodesicState(DensityMatrix state, Matrix rld);

  const DensityMatrix& state() const noexcept { return state_; }
  const Matrix& rld() const noexcept { return rld_; }
  double constraint_residual() const;
  /// tr L^dagger L rho
  double speed_squared() const;
  /// Same direction with tr L^dagger L rho = 1. Throws DomainError for L = 0.
  GeodesicState unit_speed() const;

 private:
  DensityMatrix state_;
  Matrix rld_;
};

struct FlowResult {
  Curve curve;
  std::vector<Matrix> rld;
  std::vector<double> j_rld;
  double max_constraint_residual = 0.0;
  double max_trace_drift = 0.0;
  double max_j_drift = 0.0;
  bool halted = false;
  std::string diagnostic;
};

/// Unit-speed start of the F_min geodesic and the flow time to reach sigma.
struct GeodesicStart {
  GeodesicState start;
  double duration = 0.0;
};

GeodesicStart fmin_geodesic_start(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 2 dL/dt + L^2 + 1 = 0, drho/dt = L rho under fixed-step RK4.
FlowResult commutative_geodesic_flow(const GeodesicState& start, double dt, int steps);

/// drho/dt = L rho, with dL/dt solving rho X + X rho = -(rho L^dagger L + rho).
FlowResult rld_geodesic_flow(const GeodesicState& start, double dt, int steps);

struct FrEstimate {
  double value = 0.0;          // cos(length / 2)
  double length = 0.0;         // best RLD length found
  double seed_length = 0.0;    // 2 arccos f_min
  int accepted_moves = 0;
  int evaluations = 0;
};

/// Upper estimate of the minimal RLD length, via coordinate descent on
/// piecewise-linear perturbations of the square-root factor of the F_min
/// geodesic. The returned value lies in [f_min, F_R].
FrEstimate fr_estimate_report(const DensityMatrix& rho, const DensityMatrix& sigma,
                              int control_points, int iterations, std::uint64_t seed);

inline double fr_estimate(const DensityMatrix& rho, const DensityMatrix& sigma, int control_points,
                          int iterations, std::uint64_t seed) {
  return fr_estimate_report(rho, sigma, control_points, iterations, seed).value;
}

struct ExpansionReport {
  std::vector<double> eps;
  std::vector<double> residual_fmin;      // |F_min(rho, rho + e drho) - (1 - e^2 J^R / 8)|
  std::vector<double> residual_uhlmann;   // |F(rho, rho + e drho) - (1 - e^2 J^S / 8)|
  double j_rld = 0.0;
  double j_sld = 0.0;
  double slope_fmin = 0.0;     // NaN when all residuals vanish
  double slope_uhlmann = 0.0;
  bool identically_zero = false;
  /// Leading residual coefficients: F_min - (1 - e^2 J^R / 8) ~ cubic_fmin e^3
  /// with cubic_fmin = sum_x p_x y_x^3 / 16 over the spectrum y of
  /// rho^-1/2 drho rho^-1/2 (exact), and the fidelity analogue estimated from
  /// the odd part (F(e) - F(-e)) / 2e^3 at the smallest step.
  double cubic_fmin = 0.0;
  double cubic_uhlmann = 0.0;
  /// |cubic| >= expansion_generic * J^(3/2) / 16. When false the cubic term
  /// nearly cancels and the fitted order drifts toward 4.
  bool generic_fmin = false;
  bool generic_uhlmann = false;
};

ExpansionReport expansion_check(const TangentPoint& tp, const std::vector<double>& eps_list);

inline const std::vector<double>& default_expansion_eps() {
  static const std::vector<double> eps{1e-1, 5e-2, 2.5e-2, 1.25e-2};
  return eps;
}

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

enum class ArccosBound {
  printed,      // sqrt(2 (1-F) (1 + (1-F)/6))
  sqrt_factor,  // sqrt(2 (1-F)) (1 + (1-F)/6)
};

double arccos_bound(double f, ArccosBound form);

/// max over F in {0, 1/(n-1), ..., 1} of arccos F - bound(F). Non-positive
/// when the bound holds on the grid.
double arccos_bound_violation(int grid_points, ArccosBound form);

}  // namespace revfid
