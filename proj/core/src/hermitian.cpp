#include "revfid/hermitian.hpp"

#include <cmath>
#include <sstream>

#include "revfid/errors.hpp"
#include "revfid/tolerances.hpp"

namespace revfid {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "HermitianMatrix: expected a non-empty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
  if (!all_finite(m)) throw DomainError("HermitianMatrix: non-finite entry");
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(Matrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return HermitianMatrix(Matrix(d.cast<Complex>().asDiagonal()));
}

Matrix SpectralDecomposition::reconstruct() const {
  return frame * eigenvalues.cast<Complex>().asDiagonal() * frame.adjoint();
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw DomainError("eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix apply_spectral(const SpectralDecomposition& s,
                               const std::function<double(double)>& f) {
  const auto n = s.eigenvalues.size();
  RealVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    fv(i) = f(s.eigenvalues(i));
    if (!std::isfinite(fv(i))) {
      std::ostringstream os;
      os.precision(17);
      os << "apply_spectral: function undefined at eigenvalue " << s.eigenvalues(i);
      throw DomainError(os.str());
    }
  }
  return HermitianMatrix(Matrix(s.frame * fv.cast<Complex>().asDiagonal() * s.frame.adjoint()));
}

HermitianMatrix apply_spectral(const HermitianMatrix& h,
                               const std::function<double(double)>& f) {
  return apply_spectral(eig_hermitian(h), f);
}

PsdReport psd_report(const HermitianMatrix& h) {
  const auto s = eig_hermitian(h);
  PsdReport r;
  r.min_eigenvalue = s.eigenvalues(0);
  r.tolerance_used = tol::psd_relative * h.frobenius_norm();
  r.is_psd = r.min_eigenvalue >= -r.tolerance_used;
  return r;
}

SpectralDecomposition psd_decomposition(const HermitianMatrix& p) {
  auto s = eig_hermitian(p);
  const double tolerance = tol::psd_relative * p.frobenius_norm();
  if (s.eigenvalues(0) < -tolerance) {
    std::ostringstream os;
    os.precision(6);
    os << "matrix is not positive semidefinite: min eigenvalue " << s.eigenvalues(0)
       << " below -" << tolerance;
    throw NotPsdError(os.str(), s.eigenvalues(0), tolerance);
  }
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (s.eigenvalues(i) < 0.0) s.eigenvalues(i) = 0.0;
  return s;
}

HermitianMatrix clip_psd(const HermitianMatrix& p) {
  return HermitianMatrix(psd_decomposition(p).reconstruct());
}

HermitianMatrix matrix_sqrt(const HermitianMatrix& p) {
  return apply_spectral(psd_decomposition(p), [](double x) { return std::sqrt(x); });
}

namespace {

HermitianMatrix pinv_power(const HermitianMatrix& p, double exponent) {
  const auto s = psd_decomposition(p);
  const double cutoff = tol::psd_relative * p.frobenius_norm();
  return apply_spectral(s, [&](double x) { return x > cutoff ? std::pow(x, exponent) : 0.0; });
}

}  // namespace

HermitianMatrix matrix_pinv(const HermitianMatrix& p) { return pinv_power(p, -1.0); }

HermitianMatrix matrix_pinv_sqrt(const HermitianMatrix& p) { return pinv_power(p, -0.5); }

HermitianMatrix matrix_power(const HermitianMatrix& p, double exponent) {
  if (exponent < 0.0) return pinv_power(p, exponent);
  if (exponent == 0.0) return HermitianMatrix::identity(p.dim());
  return apply_spectral(psd_decomposition(p), [&](double x) { return std::pow(x, exponent); });
}

HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b,
                               MeanRegularization reg) {
  if (a.dim() != b.dim()) throw DimensionError("geometric_mean: dimension mismatch");
  const auto spectrum = eig_hermitian(a);
  const double threshold = tol::mean_strict_positive * a.frobenius_norm();
  Matrix am = a.matrix();
  if (!(spectrum.eigenvalues(0) > threshold)) {
    if (reg == MeanRegularization::none) {
      std::ostringstream os;
      os << "geometric_mean: first argument is not strictly positive (min eigenvalue "
         << spectrum.eigenvalues(0) << " <= " << threshold
         << "); request epsilon regularization explicitly";
      throw RegularizationRequired(os.str());
    }
    if (spectrum.eigenvalues(0) < -tol::psd_relative * a.frobenius_norm())
      throw NotPsdError("geometric_mean: first argument is not PSD", spectrum.eigenvalues(0),
                        tol::psd_relative * a.frobenius_norm());
    const double eps = tol::mean_regularization * a.trace();
    am = clip_psd(a).matrix() + eps * Matrix::Identity(a.dim(), a.dim());
  }
  const Eigen::LLT<Matrix> llt(am);
  if (llt.info() != Eigen::Success)
    throw RegularizationRequired("geometric_mean: Cholesky factorization of A failed");
  const Matrix r = llt.matrixL();
  // r^-1 B r^-dagger
  Matrix inner = llt.matrixL().solve(b.matrix());
  inner = llt.matrixL().solve(Matrix(inner.adjoint())).adjoint();
  const auto root = matrix_sqrt(HermitianMatrix(inner));
  return HermitianMatrix(Matrix(r * root.matrix() * r.adjoint()));
}

double trace_norm(const Matrix& x) {
  if (!all_finite(x)) throw DomainError("trace_norm: non-finite entry");
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double operator_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace revfid
