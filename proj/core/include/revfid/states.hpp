#pragma once

#include <cstddef>
#include <vector>

#include "revfid/hermitian.hpp"

namespace revfid {

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  /// Symmetrizes, clips eigenvalues in [-1e-8, 0) to zero and renormalizes the
  /// trace. Larger deviations throw ValidationError.
  static DensityMatrix from_matrix(const Matrix& m);

  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return h_.dim(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const Matrix& matrix() const noexcept { return h_.matrix(); }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  DensityMatrix(HermitianMatrix h, double min_eig) : h_(std::move(h)), min_eigenvalue_(min_eig) {}
  HermitianMatrix h_;
  double min_eigenvalue_ = 0.0;
};

DensityMatrix make_density(const Matrix& m);

/// Unit vector in C^dim.
class PureState {
 public:
  /// Requires | ||v|| - 1 | <= 1e-12.
  explicit PureState(Vector amplitudes);
  /// Rescales v to unit norm; v must be non-zero.
  static PureState normalized(const Vector& v);
  static PureState basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  DensityMatrix projector() const;

 private:
  Vector amplitudes_;
};

/// Classical distribution. Weights above -1e-14 are clipped to zero and the
/// sum must be within `sum_tolerance` of one; stored weights sum to one.
class ProbDist {
 public:
  explicit ProbDist(std::vector<double> weights, double sum_tolerance = 1e-12);
  static ProbDist uniform(std::size_t size);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

/// Real vector whose entries sum to a declared total (0 for tangent vectors).
class SignedVector {
 public:
  SignedVector(std::vector<double> values, double declared_total = 0.0);

  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  const std::vector<double>& values() const noexcept { return v_; }
  double declared_total() const noexcept { return total_; }

 private:
  std::vector<double> v_;
  double total_;
};

/// diag(p) as a density matrix.
DensityMatrix embed(const ProbDist& p);
/// Diagonal of rho as a distribution.
ProbDist diagonal_of(const DensityMatrix& rho);

/// CPTP map in Kraus form, each operator dim_out x dim_in.
class Channel {
 public:
  explicit Channel(std::vector<Matrix> kraus);

  static Channel identity(Eigen::Index dim);
  static Channel unitary(const Matrix& u);
  /// delta_x -> |phi_x><phi_x| with phi_x the columns of `prep` (unit norm).
  /// Kraus operators |phi_x><x|, so it acts on density matrices of size
  /// prep.cols().
  static Channel preparation(const Matrix& prep);
  /// Qubit channel with the four Pauli operators scaled by 1/2.
  static Channel fully_depolarizing_qubit();

  Eigen::Index dim_in() const noexcept { return dim_in_; }
  Eigen::Index dim_out() const noexcept { return dim_out_; }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }

  /// || sum K^dagger K - I ||_F
  double completeness_residual() const;

 private:
  std::vector<Matrix> kraus_;
  Eigen::Index dim_in_ = 0;
  Eigen::Index dim_out_ = 0;
};

DensityMatrix apply_channel(const Channel& channel, const DensityMatrix& rho);

/// Measurement as a list of PSD effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<HermitianMatrix> effects);
  /// Rank-one projectors onto the columns of an orthonormal frame.
  static Povm from_frame(const Matrix& frame);

  std::size_t size() const noexcept { return effects_.size(); }
  const std::vector<HermitianMatrix>& effects() const noexcept { return effects_; }

 private:
  std::vector<HermitianMatrix> effects_;
};

ProbDist measure(const Povm& povm, const DensityMatrix& rho);
/// Outcome distribution of a channel whose output is diagonal: the diagonal
/// of channel(rho). Throws ValidationError if the output has off-diagonal
/// weight above 1e-9.
ProbDist measure(const Channel& channel, const DensityMatrix& rho);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace revfid
