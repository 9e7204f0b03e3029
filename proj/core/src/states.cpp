#include "revfid/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "revfid/errors.hpp"
#include "revfid/tolerances.hpp"

namespace revfid {

DensityMatrix DensityMatrix::from_matrix(const Matrix& m) {
  const HermitianMatrix h(m);
  const double trace = h.trace();
  if (std::abs(trace - 1.0) > tol::density_input) {
    std::ostringstream os;
    os.precision(12);
    os << "density matrix: trace " << trace << " deviates from 1 by more than "
       << tol::density_input;
    throw ValidationError(os.str());
  }
  auto s = eig_hermitian(h);
  const double min_eig = s.eigenvalues(0);
  if (min_eig < -tol::density_input) {
    std::ostringstream os;
    os.precision(6);
    os << "density matrix: min eigenvalue " << min_eig << " below -" << tol::density_input;
    throw ValidationError(os.str());
  }
  if (min_eig < 0.0) {
    s.eigenvalues = s.eigenvalues.cwiseMax(0.0);
    s.eigenvalues /= s.eigenvalues.sum();
    return DensityMatrix(HermitianMatrix(s.reconstruct()), s.eigenvalues(0));
  }
  // A pure trace rescale keeps exact entries exact.
  return DensityMatrix(HermitianMatrix(Matrix(h.matrix() / trace)), min_eig / trace);
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return from_matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix make_density(const Matrix& m) { return DensityMatrix::from_matrix(m); }

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("PureState: empty amplitude vector");
  if (!all_finite(amplitudes_)) throw DomainError("PureState: non-finite amplitude");
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > tol::pure_norm) {
    std::ostringstream os;
    os.precision(15);
    os << "PureState: norm " << n << " is not 1";
    throw ValidationError(os.str());
  }
}

PureState PureState::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("PureState: cannot normalize zero vector");
  return PureState(v / n);
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(v);
}

DensityMatrix PureState::projector() const {
  return DensityMatrix::from_matrix(amplitudes_ * amplitudes_.adjoint());
}

ProbDist::ProbDist(std::vector<double> weights, double sum_tolerance) : w_(std::move(weights)) {
  if (w_.empty()) throw DimensionError("ProbDist: empty weight vector");
  double total = 0.0;
  for (double& w : w_) {
    if (!std::isfinite(w)) throw DomainError("ProbDist: non-finite weight");
    if (w < -tol::prob_clip) {
      std::ostringstream os;
      os << "ProbDist: negative weight " << w;
      throw ValidationError(os.str());
    }
    if (w < 0.0) w = 0.0;
    total += w;
  }
  if (std::abs(total - 1.0) > sum_tolerance) {
    std::ostringstream os;
    os.precision(15);
    os << "ProbDist: weights sum to " << total;
    throw ValidationError(os.str());
  }
  for (double& w : w_) w /= total;
}

ProbDist ProbDist::uniform(std::size_t size) {
  return ProbDist(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

SignedVector::SignedVector(std::vector<double> values, double declared_total)
    : v_(std::move(values)), total_(declared_total) {
  const double sum = std::accumulate(v_.begin(), v_.end(), 0.0);
  if (std::abs(sum - total_) > tol::signed_total) {
    std::ostringstream os;
    os.precision(15);
    os << "SignedVector: values sum to " << sum << ", declared " << total_;
    throw ValidationError(os.str());
  }
}

DensityMatrix embed(const ProbDist& p) {
  RealVector d(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) d(static_cast<Eigen::Index>(i)) = p[i];
  return DensityMatrix::from_matrix(Matrix(d.cast<Complex>().asDiagonal()));
}

ProbDist diagonal_of(const DensityMatrix& rho) {
  std::vector<double> w(static_cast<std::size_t>(rho.dim()));
  for (Eigen::Index i = 0; i < rho.dim(); ++i) w[static_cast<std::size_t>(i)] = rho.matrix()(i, i).real();
  return ProbDist(std::move(w), 1e-10);
}

Channel::Channel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("Channel: at least one Kraus operator required");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  for (const auto& k : kraus_)
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw DimensionError("Channel: Kraus operators have inconsistent shapes");
  const double residual = completeness_residual();
  if (residual > tol::kraus_completeness) {
    std::ostringstream os;
    os << "Channel: Kraus completeness residual " << residual;
    throw ValidationError(os.str());
  }
}

double Channel::completeness_residual() const {
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(dim_in_, dim_in_)).norm();
}

Channel Channel::identity(Eigen::Index dim) { return Channel({Matrix::Identity(dim, dim)}); }

Channel Channel::unitary(const Matrix& u) { return Channel({u}); }

Channel Channel::preparation(const Matrix& prep) {
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(prep.cols()));
  for (Eigen::Index x = 0; x < prep.cols(); ++x) {
    Matrix k = Matrix::Zero(prep.rows(), prep.cols());
    k.col(x) = prep.col(x);
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

Channel Channel::fully_depolarizing_qubit() {
  const Complex i{0.0, 1.0};
  Matrix id = Matrix::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  return Channel({0.5 * id, 0.5 * x, 0.5 * y, 0.5 * z});
}

DensityMatrix apply_channel(const Channel& channel, const DensityMatrix& rho) {
  if (channel.dim_in() != rho.dim()) throw DimensionError("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(channel.dim_out(), channel.dim_out());
  for (const auto& k : channel.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::from_matrix(out);
}

Povm::Povm(std::vector<HermitianMatrix> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw DimensionError("Povm: no effects");
  const auto d = effects_.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : effects_) {
    if (e.dim() != d) throw DimensionError("Povm: effects have inconsistent dimensions");
    if (!psd_report(e).is_psd) throw ValidationError("Povm: effect is not PSD");
    sum += e.matrix();
  }
  const double residual = (sum - Matrix::Identity(d, d)).norm();
  if (residual > tol::povm_completeness) {
    std::ostringstream os;
    os << "Povm: effects do not sum to identity (residual " << residual << ")";
    throw ValidationError(os.str());
  }
}

Povm Povm::from_frame(const Matrix& frame) {
  std::vector<HermitianMatrix> effects;
  for (Eigen::Index x = 0; x < frame.cols(); ++x)
    effects.emplace_back(Matrix(frame.col(x) * frame.col(x).adjoint()));
  return Povm(std::move(effects));
}

ProbDist measure(const Povm& povm, const DensityMatrix& rho) {
  std::vector<double> w;
  w.reserve(povm.size());
  for (const auto& e : povm.effects()) {
    if (e.dim() != rho.dim()) throw DimensionError("measure: dimension mismatch");
    w.push_back((e.matrix() * rho.matrix()).trace().real());
  }
  return ProbDist(std::move(w), 1e-10);
}

ProbDist measure(const Channel& channel, const DensityMatrix& rho) {
  const auto out = apply_channel(channel, rho);
  const Matrix& m = out.matrix();
  const double off = (m - Matrix(m.diagonal().asDiagonal())).norm();
  if (off > 1e-9) throw ValidationError("measure: channel output is not diagonal");
  return diagonal_of(out);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()));
}

}  // namespace revfid
