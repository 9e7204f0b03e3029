#include <cmath>
#include <sstream>

#include "revfid/errors.hpp"
#include "revfid/geometry.hpp"
#include "revfid/tolerances.hpp"

namespace revfid {

GeodesicState::GeodesicState(DensityMatrix state, Matrix rld) : state_(std::move(state)), rld_(std::move(rld)) {
  if (rld_.rows() != state_.dim() || rld_.cols() != state_.dim())
    throw DimensionError("GeodesicState: RLD matrix must match the state");
  const double r = constraint_residual();
  if (r > tol::flow_start_constraint) {
    std::ostringstream os;
    os << "GeodesicState: rho L^dagger != L rho (residual " << r << ")";
    throw ValidationError(os.str());
  }
}

double GeodesicState::constraint_residual() const {
  return (state_.matrix() * rld_.adjoint() - rld_ * state_.matrix()).norm();
}

double GeodesicState::speed_squared() const {
  return (rld_.adjoint() * rld_ * state_.matrix()).trace().real();
}

GeodesicState GeodesicState::unit_speed() const {
  const double j = speed_squared();
  if (!(j > 0.0) || rld_.norm() == 0.0) throw DomainError("GeodesicState::unit_speed: L = 0 has no direction");
  return GeodesicState(state_, rld_ / std::sqrt(j));
}

namespace {

struct Phase {
  Matrix rho;
  Matrix l;
};

Phase axpy(const Phase& x, double h, const Phase& k) { return {x.rho + h * k.rho, x.l + h * k.l}; }

Phase commutative_rhs(const Phase& x) {
  const auto d = x.l.rows();
  return {x.l * x.rho, -0.5 * (x.l * x.l + Matrix::Identity(d, d))};
}

// rho X + X rho = -(rho L^dagger L + rho), solved in the eigenbasis of rho.
struct SylvesterFailure {
  double denominator;
};

Phase rld_rhs(const Phase& x) {
  const Matrix h = 0.5 * (x.rho + x.rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& lam = es.eigenvalues();
  const Matrix& u = es.eigenvectors();
  const Matrix rhs = -(x.rho * x.l.adjoint() * x.l + x.rho);
  Matrix y = u.adjoint() * rhs * u;
  const double floor = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      const double den = lam(i) + lam(j);
      if (!(den > floor)) throw SylvesterFailure{den};
      y(i, j) /= den;
    }
  return {x.l * x.rho, u * y * u.adjoint()};
}

template <typename Rhs>
FlowResult integrate(const GeodesicState& start, double dt, int steps, Rhs rhs) {
  if (!(dt > 0.0) || steps < 1) throw ValidationError("geodesic flow: dt and steps must be positive");
  const auto& rho0 = start.state().matrix();
  const Matrix& l0 = start.rld();
  const double j0 = start.speed_squared();
  if (std::abs(j0 - 1.0) > tol::flow_start_constraint) {
    std::ostringstream os;
    os << "geodesic flow: start is not unit speed (J^R = " << j0 << "); rescale with unit_speed()";
    throw ValidationError(os.str());
  }
  const double drift0 = std::abs((l0 * rho0).trace());
  if (drift0 > tol::flow_start_constraint) {
    std::ostringstream os;
    os << "geodesic flow: tr(L rho) = " << drift0 << " is not zero";
    throw ValidationError(os.str());
  }

  FlowResult out;
  out.curve.velocities.emplace();
  auto record = [&](double t, const Phase& x) {
    auto state = DensityMatrix::from_matrix(x.rho / x.rho.trace().real());
    Matrix v = x.l * x.rho;
    v = 0.5 * (v + v.adjoint());
    v.diagonal().array() -= v.trace() / static_cast<double>(v.rows());
    out.curve.times.push_back(t);
    out.curve.states.push_back(std::move(state));
    out.curve.velocities->emplace_back(v);
    out.rld.push_back(x.l);
    const double j = (x.l.adjoint() * x.l * x.rho).trace().real();
    out.j_rld.push_back(j);
    out.max_j_drift = std::max(out.max_j_drift, std::abs(j - j0));
    out.max_trace_drift = std::max(out.max_trace_drift, std::abs(x.rho.trace().real() - 1.0));
  };

  Phase x{rho0, l0};
  record(0.0, x);
  for (int n = 0; n < steps; ++n) {
    Phase next;
    try {
      const Phase k1 = rhs(x);
      const Phase k2 = rhs(axpy(x, 0.5 * dt, k1));
      const Phase k3 = rhs(axpy(x, 0.5 * dt, k2));
      const Phase k4 = rhs(axpy(x, dt, k3));
      next = {x.rho + dt / 6.0 * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho),
              x.l + dt / 6.0 * (k1.l + 2.0 * k2.l + 2.0 * k3.l + k4.l)};
    } catch (const SylvesterFailure& f) {
      std::ostringstream os;
      os << "Sylvester solve failed at step " << n << " (eigenvalue sum " << f.denominator
         << "): state is numerically singular";
      out.halted = true;
      out.diagnostic = os.str();
      return out;
    }
    next.rho = 0.5 * (next.rho + next.rho.adjoint());
    const double residual = (next.rho * next.l.adjoint() - next.l * next.rho).norm();
    out.max_constraint_residual = std::max(out.max_constraint_residual, residual);
    if (!std::isfinite(residual) || residual > tol::flow_reject_residual) {
      std::ostringstream os;
      os << "step " << n << " rejected: constraint residual " << residual;
      out.halted = true;
      out.diagnostic = os.str();
      return out;
    }
    x = std::move(next);
    try {
      record((n + 1) * dt, x);
    } catch (const Error& e) {
      out.halted = true;
      out.diagnostic = std::string("state left the density cone: ") + e.what();
      return out;
    }
  }
  return out;
}

}  // namespace

FlowResult commutative_geodesic_flow(const GeodesicState& start, double dt, int steps) {
  return integrate(start, dt, steps, commutative_rhs);
}

FlowResult rld_geodesic_flow(const GeodesicState& start, double dt, int steps) {
  return integrate(start, dt, steps, rld_rhs);
}

}  // namespace revfid
