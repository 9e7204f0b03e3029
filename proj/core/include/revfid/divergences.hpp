#pragma once

#include <functional>
#include <optional>
#include <string>

#include "revfid/states.hpp"

namespace revfid {

/// Operator monotone function f on [0, inf) used by generalized fidelities.
///
/// power(alpha) with alpha in (0, 1], sqrt == power(1/2), or a custom map.
/// Operator monotonicity of a custom map is the caller's responsibility.
///
/// Terms with p(x) = 0 in sum_x p(x) f(q(x)/p(x)) are evaluated through the
/// limit q(x) * lim_{t->inf} f(t)/t: zero for power(alpha < 1), q(x) for
/// power(1). A custom map without a declared slope cannot be evaluated at such
/// points and raises DomainError.
class OperatorMonotone {
 public:
  enum class Kind { power, custom };

  static OperatorMonotone power(double alpha);
  static OperatorMonotone sqrt() { return power(0.5); }
  static OperatorMonotone custom(std::string name, std::function<double(double)> f,
                                 std::optional<double> slope_at_infinity = std::nullopt);

  double operator()(double t) const;
  /// lim_{p -> 0} p f(q / p) for q > 0.
  double zero_mass_term(double q) const;

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  const std::string& name() const noexcept { return name_; }

 private:
  OperatorMonotone() = default;
  Kind kind_ = Kind::power;
  double alpha_ = 0.5;
  std::string name_;
  std::function<double(double)> f_;
  std::optional<double> slope_;
};

double classical_fidelity(const ProbDist& p, const ProbDist& q);

/// tr sqrt(sqrt(sigma) rho sqrt(sigma)).
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Throws DomainError unless min eigenvalue of rho exceeds 1e-10.
void require_strictly_positive(const DensityMatrix& rho, const char* what);

/// T = sqrt(rho^-1/2 sigma rho^-1/2), the positive operator with
/// (sqrt(rho) T)(sqrt(rho) T)^dagger = sigma.
HermitianMatrix transition_operator(const DensityMatrix& rho, const DensityMatrix& sigma);

/// tr rho T. The reverse-test optimum for strictly positive rho; singular rho
/// is rejected (use f_min_pure for pure second arguments, or regularize
/// explicitly).
double f_min(const DensityMatrix& rho, const DensityMatrix& sigma);

/// tr (rho # sigma), evaluated through geometric_mean.
double f_min_via_geomean(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Reverse-test fidelity against a pure target; handles singular rho.
/// 1 / || pinv(sqrt rho) phi || when phi lies in supp rho, else 0.
double f_min_pure(const DensityMatrix& rho, const PureState& phi);

/// Largest c with rho - c |phi><phi| >= 0.
double max_pure_weight(const DensityMatrix& rho, const PureState& phi);

double generalized_fidelity_classical(const ProbDist& p, const ProbDist& q,
                                      const OperatorMonotone& f);

/// tr rho^1/2 f(T^2) rho^1/2 with T^2 = rho^-1/2 sigma rho^-1/2.
double f_f_min(const DensityMatrix& rho, const DensityMatrix& sigma, const OperatorMonotone& f);

struct QuasiEntropyComparison {
  /// 1 - tr rho^(1-alpha) sigma^alpha
  double s_alpha = 0.0;
  /// 1 - tr rho^1/2 (rho^-1/2 sigma rho^-1/2)^alpha rho^1/2, i.e. 1 - F_f^min
  /// for f(t) = t^alpha. Equals s_alpha on commuting pairs and bounds it from
  /// above in general.
  double one_minus_f_alpha_min = 0.0;
  /// Same with the exponent 1 - alpha.
  double one_minus_f_alpha_min_swapped = 0.0;
};

QuasiEntropyComparison quasi_entropy_comparison(const DensityMatrix& rho,
                                                const DensityMatrix& sigma, double alpha);

/// sum p ln(p/q); +infinity when supp p is not contained in supp q.
double kl_divergence(const ProbDist& p, const ProbDist& q);

/// tr rho ln(sqrt(rho) sigma^-1 sqrt(rho)); sigma must be strictly positive.
double reverse_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double trace_distance_classical(const ProbDist& p, const ProbDist& q);
double trace_distance_quantum(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Exact reverse-test statistical distance to a pure target:
/// 1 - 1 / <phi| pinv(rho) |phi> when phi lies in supp rho, else 1.
double delta_max_pure(const DensityMatrix& rho, const PureState& phi);

struct DeltaMaxBounds {
  double lower = 0.0;                  // 1 - F_min
  double upper = 0.0;                  // sqrt(1 - F_min^2)
  double upper_via_measurement = 0.0;  // Delta(M(rho), M(T rho T)), M = eigenprojectors of T
};

DeltaMaxBounds delta_max_bounds(const DensityMatrix& rho, const DensityMatrix& sigma);

/// arccos clamped to [-1, 1].
double safe_acos(double x);

}  // namespace revfid
