#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace revfid {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Complex square matrix stored in Hermitian form. Construction checks the
/// shape and finiteness, then replaces the input by (M + M^dagger) / 2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& m);

  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix diagonal(const RealVector& d);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }

 private:
  Matrix m_;
};

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors as
/// columns of `frame`.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix frame;

  Matrix reconstruct() const;
};

struct PsdReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double tolerance_used = 0.0;
};

SpectralDecomposition eig_hermitian(const HermitianMatrix& h);

/// frame * diag(f(lambda_i)) * frame^dagger. Throws DomainError naming the
/// eigenvalue when f returns a non-finite value.
HermitianMatrix apply_spectral(const HermitianMatrix& h,
                               const std::function<double(double)>& f);
HermitianMatrix apply_spectral(const SpectralDecomposition& s,
                               const std::function<double(double)>& f);

/// PSD check against -psd_relative * ||H||_F.
PsdReport psd_report(const HermitianMatrix& h);

/// Spectral decomposition with eigenvalues in [-tol, 0) clipped to zero.
/// Throws NotPsdError below the tolerance.
SpectralDecomposition psd_decomposition(const HermitianMatrix& p);

HermitianMatrix clip_psd(const HermitianMatrix& p);
HermitianMatrix matrix_sqrt(const HermitianMatrix& p);

/// Moore-Penrose inverse; eigenvalues at or below the PSD tolerance are
/// treated as exact zeros.
HermitianMatrix matrix_pinv(const HermitianMatrix& p);

/// pinv(sqrt(P)).
HermitianMatrix matrix_pinv_sqrt(const HermitianMatrix& p);

/// P^exponent for PSD P, via the clipped spectrum. Negative exponents act as
/// zero on the kernel.
HermitianMatrix matrix_power(const HermitianMatrix& p, double exponent);

enum class MeanRegularization { none, epsilon };

/// Operator geometric mean A # B. A must be strictly positive
/// (min eigenvalue > 1e-12 ||A||_F) unless epsilon regularization is
/// requested, in which case A + eps I with eps = 1e-12 tr A is used.
///
/// Evaluated through the Cholesky factor A = R R^dagger as
/// R (R^-1 B R^-dagger)^(1/2) R^dagger, which is congruence-equivalent to the
/// eigenvalue form A^(1/2) (A^(-1/2) B A^(-1/2))^(1/2) A^(1/2).
HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                               MeanRegularization reg = MeanRegularization::none);

/// Sum of singular values.
double trace_norm(const Matrix& x);

double operator_norm(const Matrix& x);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);

}  // namespace revfid
