#include "revfid/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "revfid/errors.hpp"
#include "revfid/tolerances.hpp"

namespace revfid {

namespace {

void require_same_size(const ProbDist& p, const ProbDist& q, const char* what) {
  if (p.size() != q.size()) {
    std::ostringstream os;
    os << what << ": size mismatch (" << p.size() << " vs " << q.size() << ")";
    throw DimensionError(os.str());
  }
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(os.str());
  }
}

void require_same_dim(const DensityMatrix& a, const PureState& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionError(os.str());
  }
}

// rho^-1/2 sigma rho^-1/2, clipped to the PSD cone.
SpectralDecomposition relative_operator(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix w = matrix_pinv_sqrt(rho.hermitian()).matrix();
  return psd_decomposition(HermitianMatrix(Matrix(w * sigma.matrix() * w)));
}

struct SupportSplit {
  double inverse_weight = 0.0;  // <phi| pinv(rho) |phi>
  double leakage = 0.0;         // ||(1 - P_supp) phi||
};

SupportSplit split_on_support(const DensityMatrix& rho, const PureState& phi) {
  const auto s = eig_hermitian(rho.hermitian());
  const double cutoff = tol::support_eigenvalue * rho.hermitian().frobenius_norm();
  const Vector coeffs = s.frame.adjoint() * phi.amplitudes();
  SupportSplit out;
  double outside = 0.0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const double w = std::norm(coeffs(i));
    if (s.eigenvalues(i) > cutoff)
      out.inverse_weight += w / s.eigenvalues(i);
    else
      outside += w;
  }
  out.leakage = std::sqrt(outside);
  return out;
}

}  // namespace

double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

OperatorMonotone OperatorMonotone::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "OperatorMonotone::power: exponent " << alpha << " outside (0, 1]";
    throw ValidationError(os.str());
  }
  OperatorMonotone f;
  f.kind_ = Kind::power;
  f.alpha_ = alpha;
  std::ostringstream os;
  os << "t^" << alpha;
  f.name_ = os.str();
  return f;
}

OperatorMonotone OperatorMonotone::custom(std::string name, std::function<double(double)> fn,
                                          std::optional<double> slope_at_infinity) {
  if (!fn) throw ValidationError("OperatorMonotone::custom: empty function");
  OperatorMonotone f;
  f.kind_ = Kind::custom;
  f.name_ = std::move(name);
  f.f_ = std::move(fn);
  f.slope_ = slope_at_infinity;
  return f;
}

double OperatorMonotone::operator()(double t) const {
  if (kind_ == Kind::power) return t <= 0.0 ? 0.0 : std::pow(t, alpha_);
  return f_(t);
}

double OperatorMonotone::zero_mass_term(double q) const {
  if (q == 0.0) return 0.0;
  if (kind_ == Kind::power) return alpha_ < 1.0 ? 0.0 : q;
  if (!slope_)
    throw DomainError("generalized fidelity: custom function '" + name_ +
                      "' has no declared slope at infinity; zero-mass points unsupported");
  return q * *slope_;
}

double classical_fidelity(const ProbDist& p, const ProbDist& q) {
  require_same_size(p, q, "classical_fidelity");
  double f = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) f += std::sqrt(p[x] * q[x]);
  return f;
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "uhlmann_fidelity");
  // || sqrt(rho) sqrt(sigma) ||_1 from singular values: taking square roots
  // of the eigenvalues of sqrt(sigma) rho sqrt(sigma) amplifies rounding on
  // nearly singular pairs.
  const Matrix product = matrix_sqrt(rho.hermitian()).matrix() * matrix_sqrt(sigma.hermitian()).matrix();
  return trace_norm(product);
}

void require_strictly_positive(const DensityMatrix& rho, const char* what) {
  if (!(rho.min_eigenvalue() > tol::strictly_positive_state)) {
    std::ostringstream os;
    os << what << ": first state is singular (min eigenvalue " << rho.min_eigenvalue()
       << " <= " << tol::strictly_positive_state
       << "); use f_min_pure for a pure second argument or regularize explicitly";
    throw DomainError(os.str());
  }
}

HermitianMatrix transition_operator(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "transition_operator");
  require_strictly_positive(rho, "transition_operator");
  return apply_spectral(relative_operator(rho, sigma), [](double x) { return std::sqrt(x); });
}

double f_min(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "f_min");
  require_strictly_positive(rho, "f_min");
  const auto t = transition_operator(rho, sigma);
  return (rho.matrix() * t.matrix()).trace().real();
}

double f_min_via_geomean(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "f_min_via_geomean");
  require_strictly_positive(rho, "f_min_via_geomean");
  return geometric_mean(rho.hermitian(), sigma.hermitian()).trace();
}

double max_pure_weight(const DensityMatrix& rho, const PureState& phi) {
  require_same_dim(rho, phi, "max_pure_weight");
  const auto split = split_on_support(rho, phi);
  if (split.leakage > tol::support_membership || !(split.inverse_weight > 0.0)) return 0.0;
  return 1.0 / split.inverse_weight;
}

double f_min_pure(const DensityMatrix& rho, const PureState& phi) {
  return std::sqrt(max_pure_weight(rho, phi));
}

double generalized_fidelity_classical(const ProbDist& p, const ProbDist& q,
                                      const OperatorMonotone& f) {
  require_same_size(p, q, "generalized_fidelity_classical");
  double total = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0)
      total += f.zero_mass_term(q[x]);
    else
      total += p[x] * f(q[x] / p[x]);
  }
  return total;
}

double f_f_min(const DensityMatrix& rho, const DensityMatrix& sigma, const OperatorMonotone& f) {
  require_same_dim(rho, sigma, "f_f_min");
  require_strictly_positive(rho, "f_f_min");
  const auto fx = apply_spectral(relative_operator(rho, sigma), [&](double x) { return f(x); });
  return (rho.matrix() * fx.matrix()).trace().real();
}

QuasiEntropyComparison quasi_entropy_comparison(const DensityMatrix& rho,
                                                const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma, "quasi_entropy_comparison");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("quasi_entropy_comparison: alpha outside (0, 1)");
  require_strictly_positive(rho, "quasi_entropy_comparison");
  require_strictly_positive(sigma, "quasi_entropy_comparison");
  const Matrix a = matrix_power(rho.hermitian(), 1.0 - alpha).matrix();
  const Matrix b = matrix_power(sigma.hermitian(), alpha).matrix();
  QuasiEntropyComparison out;
  out.s_alpha = 1.0 - (a * b).trace().real();
  out.one_minus_f_alpha_min = 1.0 - f_f_min(rho, sigma, OperatorMonotone::power(alpha));
  out.one_minus_f_alpha_min_swapped = 1.0 - f_f_min(rho, sigma, OperatorMonotone::power(1.0 - alpha));
  return out;
}

double kl_divergence(const ProbDist& p, const ProbDist& q) {
  require_same_size(p, q, "kl_divergence");
  double d = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    if (q[x] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[x] * std::log(p[x] / q[x]);
  }
  return d;
}

double reverse_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "reverse_relative_entropy");
  if (!(sigma.min_eigenvalue() > tol::strictly_positive_state)) {
    std::ostringstream os;
    os << "reverse_relative_entropy: second state is singular (min eigenvalue "
       << sigma.min_eigenvalue() << ")";
    throw DomainError(os.str());
  }
  const Matrix root = matrix_sqrt(rho.hermitian()).matrix();
  const Matrix inner = root * matrix_pinv(sigma.hermitian()).matrix() * root;
  const auto s = eig_hermitian(HermitianMatrix(inner));
  double d = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double weight = (s.frame.col(i).adjoint() * rho.matrix() * s.frame.col(i))(0, 0).real();
    if (s.eigenvalues(i) <= 0.0 || weight <= 0.0) continue;
    d += weight * std::log(s.eigenvalues(i));
  }
  return d;
}

double trace_distance_classical(const ProbDist& p, const ProbDist& q) {
  require_same_size(p, q, "trace_distance_classical");
  double d = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) d += std::abs(p[x] - q[x]);
  return 0.5 * d;
}

double trace_distance_quantum(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance_quantum");
  // The difference is Hermitian, so the trace norm is the sum of |eigenvalues|.
  const auto s = eig_hermitian(HermitianMatrix(Matrix(rho.matrix() - sigma.matrix())));
  return 0.5 * s.eigenvalues.cwiseAbs().sum();
}

double delta_max_pure(const DensityMatrix& rho, const PureState& phi) {
  const double c = max_pure_weight(rho, phi);
  return 1.0 - c;
}

DeltaMaxBounds delta_max_bounds(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "delta_max_bounds");
  require_strictly_positive(rho, "delta_max_bounds");
  const auto t = transition_operator(rho, sigma);
  const double fm = (rho.matrix() * t.matrix()).trace().real();
  DeltaMaxBounds b;
  b.lower = std::max(0.0, 1.0 - fm);
  b.upper = std::sqrt(std::max(0.0, 1.0 - fm * fm));

  // Measure rho and T rho T in the eigenspaces of T.
  const auto s = eig_hermitian(t);
  const Matrix trt = t.matrix() * rho.matrix() * t.matrix();
  const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  double distance = 0.0;
  Eigen::Index i = 0;
  const auto n = s.eigenvalues.size();
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && s.eigenvalues(j) - s.eigenvalues(j - 1) <= tol::degenerate_eigenvalue * scale) ++j;
    const Matrix block = s.frame.middleCols(i, j - i);
    const double p = (block.adjoint() * rho.matrix() * block).trace().real();
    const double q = (block.adjoint() * trt * block).trace().real();
    distance += std::abs(p - q);
    i = j;
  }
  b.upper_via_measurement = 0.5 * distance;
  return b;
}

}  // namespace revfid
