#include "revfid/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "revfid/divergences.hpp"
#include "revfid/errors.hpp"
#include "revfid/reverse_tests.hpp"
#include "revfid/tolerances.hpp"

namespace revfid {

TangentPoint::TangentPoint(DensityMatrix state, HermitianMatrix velocity)
    : state_(std::move(state)), velocity_(std::move(velocity)) {
  if (velocity_.dim() != state_.dim())
    throw DimensionError("TangentPoint: velocity and state differ in dimension");
  if (std::abs(velocity_.trace()) > tol::tangent_trace) {
    std::ostringstream os;
    os << "TangentPoint: velocity trace " << velocity_.trace() << " is not zero";
    throw ValidationError(os.str());
  }
}

SldFisher sld_fisher(const TangentPoint& tp) {
  const auto& rho = tp.state();
  require_strictly_positive(rho, "sld_fisher");
  const auto s = eig_hermitian(rho.hermitian());
  const auto d = rho.dim();
  const Matrix v = s.frame.adjoint() * tp.velocity().matrix() * s.frame;
  Matrix l(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) l(i, j) = 2.0 * v(i, j) / (s.eigenvalues(i) + s.eigenvalues(j));
  SldFisher out;
  out.l = HermitianMatrix(Matrix(s.frame * l * s.frame.adjoint()));
  const Matrix& lm = out.l.matrix();
  out.j = std::max(0.0, (lm * lm * rho.matrix()).trace().real());
  out.residual = (0.5 * (lm * rho.matrix() + rho.matrix() * lm) - tp.velocity().matrix()).norm();
  return out;
}

RldFisher rld_fisher(const TangentPoint& tp) {
  const auto& rho = tp.state();
  require_strictly_positive(rho, "rld_fisher");
  const Matrix inv = matrix_power(rho.hermitian(), -1.0).matrix();
  RldFisher out;
  out.l = tp.velocity().matrix() * inv;
  out.j = std::max(0.0, (out.l * tp.velocity().matrix()).trace().real());
  return out;
}

FisherReport fisher_report(const TangentPoint& tp) {
  auto s = sld_fisher(tp);
  auto r = rld_fisher(tp);
  return {s.j, r.j, std::move(s.l), std::move(r.l)};
}

double fisher_information(const TangentPoint& tp, Metric metric) {
  return metric == Metric::sld ? sld_fisher(tp).j : rld_fisher(tp).j;
}

double classical_fisher(const ProbDist& p, const SignedVector& dp) {
  if (p.size() != dp.size()) throw DimensionError("classical_fisher: size mismatch");
  double j = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) {
      j += dp[x] * dp[x] / p[x];
    } else if (dp[x] != 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return j;
}

TangentReverseEstimation tangent_reverse_estimation(const TangentPoint& tp) {
  const auto& rho = tp.state();
  require_strictly_positive(rho, "tangent_reverse_estimation");
  const Matrix root = matrix_sqrt(rho.hermitian()).matrix();
  const Matrix inv_root = matrix_power(rho.hermitian(), -0.5).matrix();
  const auto y = eig_hermitian(HermitianMatrix(Matrix(inv_root * tp.velocity().matrix() * inv_root)));
  const Matrix b = root * y.frame;
  const auto d = rho.dim();
  Matrix prep(d, d);
  std::vector<double> p(static_cast<std::size_t>(d)), dp(static_cast<std::size_t>(d));
  for (Eigen::Index x = 0; x < d; ++x) {
    const double n = b.col(x).norm();
    prep.col(x) = b.col(x) / n;
    p[static_cast<std::size_t>(x)] = n * n;
    dp[static_cast<std::size_t>(x)] = y.eigenvalues(x) * n * n;
  }
  ProbDist pd(p, 1e-10);
  SignedVector dv(dp);
  RealVector pv = Eigen::Map<const RealVector>(p.data(), d);
  RealVector dpv = Eigen::Map<const RealVector>(dp.data(), d);
  TangentReverseEstimation out{prep, std::move(pd), std::move(dv), 0.0, 0.0};
  out.state_residual = (prep * pv.cast<Complex>().asDiagonal() * prep.adjoint() - rho.matrix()).norm();
  out.velocity_residual =
      (prep * dpv.cast<Complex>().asDiagonal() * prep.adjoint() - tp.velocity().matrix()).norm();
  return out;
}

void Curve::check() const {
  if (states.empty()) throw ValidationError("Curve: no samples");
  if (times.size() != states.size()) throw ValidationError("Curve: times and states differ in length");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ValidationError("Curve: time grid is not strictly increasing");
  const auto d = states.front().dim();
  for (const auto& s : states)
    if (s.dim() != d) throw DimensionError("Curve: states differ in dimension");
  if (velocities) {
    if (velocities->size() != states.size())
      throw ValidationError("Curve: velocities and states differ in length");
    for (const auto& v : *velocities)
      if (v.dim() != d) throw DimensionError("Curve: velocity dimension mismatch");
  }
}

std::vector<HermitianMatrix> finite_difference_velocities(const Curve& curve) {
  curve.check();
  const std::size_t n = curve.size();
  if (n < 2) return {HermitianMatrix::zero(curve.states.front().dim())};
  std::vector<HermitianMatrix> out;
  out.reserve(n);
  const auto& t = curve.times;
  const auto& s = curve.states;
  if (n == 2) {
    const Matrix d = (s[1].matrix() - s[0].matrix()) / (t[1] - t[0]);
    return {HermitianMatrix(d), HermitianMatrix(d)};
  }
  // Three-point stencils, second order on nonuniform grids.
  // Weights sum to zero; differencing against the middle point keeps constant curves exact.
  auto stencil = [&](std::size_t a, std::size_t b, std::size_t c, double wa, double, double wc) {
    return HermitianMatrix(Matrix(wa * (s[a].matrix() - s[b].matrix()) + wc * (s[c].matrix() - s[b].matrix())));
  };
  {
    const double h0 = t[1] - t[0], h1 = t[2] - t[1];
    out.push_back(stencil(0, 1, 2, -(2 * h0 + h1) / (h0 * (h0 + h1)), (h0 + h1) / (h0 * h1),
                          -h0 / (h1 * (h0 + h1))));
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
    out.push_back(stencil(i - 1, i, i + 1, -h1 / (h0 * (h0 + h1)), (h1 - h0) / (h0 * h1),
                          h0 / (h1 * (h0 + h1))));
  }
  {
    const double h0 = t[n - 2] - t[n - 3], h1 = t[n - 1] - t[n - 2];
    out.push_back(stencil(n - 3, n - 2, n - 1, h1 / (h0 * (h0 + h1)), -(h0 + h1) / (h0 * h1),
                          (2 * h1 + h0) / (h1 * (h0 + h1))));
  }
  return out;
}

namespace {

double speed(const DensityMatrix& state, const HermitianMatrix& velocity, Metric metric) {
  // Remove the rounding-level trace that finite differences leave behind.
  Matrix v = velocity.matrix();
  v.diagonal().array() -= velocity.trace() / static_cast<double>(velocity.dim());
  return std::sqrt(fisher_information(TangentPoint(state, HermitianMatrix(v)), metric));
}

}  // namespace

double curve_length(const Curve& curve, Metric metric) {
  curve.check();
  const std::size_t n = curve.size();
  if (n == 1) return 0.0;
  if (n < 3) throw ValidationError("curve_length: at least 3 samples are required");
  const auto vel = curve.velocities ? *curve.velocities : finite_difference_velocities(curve);
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = speed(curve.states[i], vel[i], metric);

  const auto& t = curve.times;
  double total = 0.0;
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = t[i + 1] - t[i];
    const double h1 = t[i + 2] - t[i + 1];
    total += (h0 + h1) / 6.0 *
             ((2.0 - h1 / h0) * f[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[i + 1] +
              (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < n) total += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
  return std::max(0.0, total);
}

namespace {

constexpr std::array<double, 5> kGaussNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

}  // namespace

double path_length(const PathFunction& path, Metric metric, int panels) {
  if (panels < 1) throw ValidationError("path_length: panels must be positive");
  const double h = 1.0 / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * h;
    for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
      const auto tp = path(mid + 0.5 * h * kGaussNodes[g]);
      total += 0.5 * h * kGaussWeights[g] * std::sqrt(fisher_information(tp, metric));
    }
  }
  return total;
}

FminGeodesic::FminGeodesic(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_strictly_positive(rho, "fmin_geodesic");
  require_strictly_positive(sigma, "fmin_geodesic");
  const auto rt = minimal_reverse_test(rho, sigma);
  prep_ = rt.prep();
  const auto m = static_cast<Eigen::Index>(rt.size());
  a_.resize(m);
  sqrt_q_.resize(m);
  for (Eigen::Index x = 0; x < m; ++x) {
    a_(x) = std::sqrt(rt.p()[static_cast<std::size_t>(x)]);
    sqrt_q_(x) = std::sqrt(rt.q()[static_cast<std::size_t>(x)]);
  }
  theta_ = safe_acos(a_.dot(sqrt_q_));
}

RealVector FminGeodesic::amplitude(double t) const {
  if (theta_ < 1e-12) return a_;
  const double s = std::sin(theta_);
  return (std::sin((1.0 - t) * theta_) * a_ + std::sin(t * theta_) * sqrt_q_) / s;
}

RealVector FminGeodesic::amplitude_velocity(double t) const {
  if (theta_ < 1e-12) return RealVector::Zero(a_.size());
  const double s = std::sin(theta_);
  return theta_ * (-std::cos((1.0 - t) * theta_) * a_ + std::cos(t * theta_) * sqrt_q_) / s;
}

DensityMatrix FminGeodesic::state(double t) const {
  const RealVector u = amplitude(t);
  const RealVector p = u.cwiseProduct(u);
  return DensityMatrix::from_matrix(prep_ * p.cast<Complex>().asDiagonal() * prep_.adjoint());
}

HermitianMatrix FminGeodesic::velocity(double t) const {
  const RealVector u = amplitude(t);
  const RealVector du = amplitude_velocity(t);
  const RealVector dp = 2.0 * u.cwiseProduct(du);
  Matrix v = prep_ * dp.cast<Complex>().asDiagonal() * prep_.adjoint();
  v.diagonal().array() -= v.trace() / static_cast<double>(v.rows());
  return HermitianMatrix(v);
}

Matrix FminGeodesic::initial_rld() const {
  if (theta_ < 1e-12) throw DomainError("FminGeodesic: endpoints coincide, no initial direction");
  const RealVector b = (sqrt_q_ - std::cos(theta_) * a_) / std::sin(theta_);
  const RealVector ratio = b.cwiseQuotient(a_);
  return prep_ * ratio.cast<Complex>().asDiagonal() * prep_.inverse();
}

Curve fmin_geodesic(const DensityMatrix& rho, const DensityMatrix& sigma, int n_samples) {
  const FminGeodesic g(rho, sigma);
  Curve c;
  c.velocities.emplace();
  if (g.theta() < 1e-12) {
    c.times.push_back(0.0);
    c.states.push_back(rho);
    c.velocities->push_back(HermitianMatrix::zero(rho.dim()));
    return c;
  }
  if (n_samples < 3) throw ValidationError("fmin_geodesic: at least 3 samples are required");
  for (int i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) / (n_samples - 1);
    c.times.push_back(t);
    c.states.push_back(g.state(t));
    c.velocities->push_back(g.velocity(t));
  }
  return c;
}

GeodesicStart fmin_geodesic_start(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const FminGeodesic g(rho, sigma);
  return {GeodesicState(rho, g.initial_rld()), g.length()};
}

ExpansionReport expansion_check(const TangentPoint& tp, const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) throw ValidationError("expansion_check: need at least two step sizes");
  const auto& rho = tp.state();
  require_strictly_positive(rho, "expansion_check");
  const auto fr = fisher_report(tp);
  ExpansionReport r;
  r.eps = eps_list;
  r.j_rld = fr.j_rld;
  r.j_sld = fr.j_sld;
  r.identically_zero = tp.velocity().frobenius_norm() == 0.0;
  if (!r.identically_zero) {
    const Matrix inv_root = matrix_power(rho.hermitian(), -0.5).matrix();
    const auto y = eig_hermitian(HermitianMatrix(Matrix(inv_root * tp.velocity().matrix() * inv_root)));
    const Matrix b = matrix_sqrt(rho.hermitian()).matrix() * y.frame;
    double m3 = 0.0;
    for (Eigen::Index x = 0; x < b.cols(); ++x) m3 += b.col(x).squaredNorm() * std::pow(y.eigenvalues(x), 3);
    r.cubic_fmin = m3 / 16.0;
    r.generic_fmin = std::abs(r.cubic_fmin) >= tol::expansion_generic * std::pow(r.j_rld, 1.5) / 16.0;

    const double e = *std::min_element(eps_list.begin(), eps_list.end());
    const HermitianMatrix plus(Matrix(rho.matrix() + e * tp.velocity().matrix()));
    const HermitianMatrix minus(Matrix(rho.matrix() - e * tp.velocity().matrix()));
    if (eig_hermitian(plus).eigenvalues(0) >= 0.0 && eig_hermitian(minus).eigenvalues(0) >= 0.0) {
      const double odd = uhlmann_fidelity(rho, DensityMatrix::from_matrix(plus.matrix())) -
                         uhlmann_fidelity(rho, DensityMatrix::from_matrix(minus.matrix()));
      r.cubic_uhlmann = odd / (2.0 * e * e * e);
      r.generic_uhlmann = std::abs(r.cubic_uhlmann) >= tol::expansion_generic * std::pow(r.j_sld, 1.5) / 16.0;
    } else {
      r.cubic_uhlmann = std::numeric_limits<double>::quiet_NaN();
    }
  }
  for (double e : eps_list) {
    if (!(e > 0.0)) throw ValidationError("expansion_check: step sizes must be positive");
    const HermitianMatrix moved(Matrix(rho.matrix() + e * tp.velocity().matrix()));
    const double lo = eig_hermitian(moved).eigenvalues(0);
    if (lo < 0.0) {
      std::ostringstream os;
      os << "expansion_check: rho + " << e << " drho leaves the PSD cone (min eigenvalue " << lo << ")";
      throw DomainError(os.str());
    }
    const auto sigma = DensityMatrix::from_matrix(moved.matrix());
    r.residual_fmin.push_back(std::abs(f_min(rho, sigma) - (1.0 - e * e * r.j_rld / 8.0)));
    r.residual_uhlmann.push_back(std::abs(uhlmann_fidelity(rho, sigma) - (1.0 - e * e * r.j_sld / 8.0)));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.slope_fmin = r.identically_zero ? nan : log_log_slope(r.eps, r.residual_fmin);
  r.slope_uhlmann = r.identically_zero ? nan : log_log_slope(r.eps, r.residual_uhlmann);
  return r;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("log_log_slope: need matching samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double arccos_bound(double f, ArccosBound form) {
  const double x = 1.0 - f;
  if (form == ArccosBound::printed) return std::sqrt(2.0 * x * (1.0 + x / 6.0));
  return std::sqrt(2.0 * x) * (1.0 + x / 6.0);
}

double arccos_bound_violation(int grid_points, ArccosBound form) {
  if (grid_points < 2) throw ValidationError("arccos_bound_violation: need at least two grid points");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double f = static_cast<double>(i) / (grid_points - 1);
    worst = std::max(worst, std::acos(f) - arccos_bound(f, form));
  }
  return worst;
}

}  // namespace revfid
