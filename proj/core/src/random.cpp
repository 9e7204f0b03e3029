#include "revfid/random.hpp"

#include <cmath>

#include "revfid/errors.hpp"

namespace revfid {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  engine_.seed(seq);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

namespace {

DensityMatrix ginibre_state(int dim, int rank, Rng& rng) {
  const Matrix g = ginibre(rng, dim, rank);
  const Matrix w = g * g.adjoint();
  return DensityMatrix::from_matrix(w / w.trace().real());
}

void check_dim(int dim, const char* what) {
  if (dim < 1) throw ValidationError(std::string(what) + ": dimension must be positive");
}

}  // namespace

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  check_dim(dim, "random_density");
  if (rank < 1 || rank > dim) throw ValidationError("random_density: rank out of range");
  Rng rng(seed);
  return ginibre_state(dim, rank, rng);
}

DensityMatrix random_density(int dim, Rng& rng) {
  check_dim(dim, "random_density");
  return ginibre_state(dim, dim, rng);
}

PureState random_pure(int dim, Rng& rng) {
  check_dim(dim, "random_pure");
  return PureState::normalized(ginibre(rng, dim, 1).col(0));
}

PureState random_pure(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dim, rng);
}

Matrix random_unitary(int dim, Rng& rng) {
  check_dim(dim, "random_unitary");
  const Matrix g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Channel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng) {
  check_dim(dim_in, "random_channel");
  check_dim(dim_out, "random_channel");
  if (kraus_count < 1) throw ValidationError("random_channel: kraus_count must be >= 1");
  const Eigen::Index rows = static_cast<Eigen::Index>(dim_out) * kraus_count;
  if (rows < dim_in)
    throw ValidationError("random_channel: dim_out * kraus_count must be >= dim_in");
  const Matrix g = ginibre(rng, rows, dim_in);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix iso = Matrix(qr.householderQ()).leftCols(dim_in);
  // Row index a * kraus_count + j  <->  |a> (x) |j>; K_j = (I (x) <j|) iso.
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(kraus_count));
  for (int j = 0; j < kraus_count; ++j) {
    Matrix k(dim_out, dim_in);
    for (int a = 0; a < dim_out; ++a) k.row(a) = iso.row(static_cast<Eigen::Index>(a) * kraus_count + j);
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

Channel random_channel(int dim_in, int dim_out, int kraus_count, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(dim_in, dim_out, kraus_count, rng);
}

HermitianMatrix random_tangent(const DensityMatrix& rho, double scale, Rng& rng) {
  const auto d = rho.dim();
  const Matrix g = ginibre(rng, d, d);
  Matrix h = (g + g.adjoint()) * 0.5;
  h -= (h.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
  const Matrix w = matrix_pinv_sqrt(rho.hermitian()).matrix();
  const double n = operator_norm(w * h * w);
  if (n > 0.0) h *= scale / n;
  return HermitianMatrix(h);
}

}  // namespace revfid
