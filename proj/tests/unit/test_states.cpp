#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace revfid;
using revfid::testing::diag;
using revfid::testing::pauli_x;

TEST(DensityMatrix, Examples) {
  const auto mixed = make_density(Matrix::Identity(2, 2) / 2.0);
  EXPECT_NEAR(mixed.min_eigenvalue(), 0.5, 1e-15);
  const auto pure = make_density(diag({1, 0}));
  EXPECT_NEAR(pure.min_eigenvalue(), 0.0, 1e-15);

  Matrix m(2, 2);
  m << 0.5, 0.1, 0.1, 0.5;
  const auto rho = make_density(m);
  const auto [lo, hi] = revfid::testing::eig2(rho.matrix());
  EXPECT_NEAR(lo, 0.4, 1e-14);
  EXPECT_NEAR(hi, 0.6, 1e-14);
  EXPECT_NEAR(rho.min_eigenvalue(), 0.4, 1e-14);
}

TEST(DensityMatrix, ValidationErrors) {
  EXPECT_THROW(make_density(diag({0.6, 0.6})), ValidationError);
  EXPECT_THROW(make_density(diag({1.001, -0.001})), ValidationError);
  // Drift inside 1e-8 is accepted and renormalized.
  const auto rho = make_density(diag({0.5 + 4e-9, 0.5}));
  EXPECT_NEAR(rho.hermitian().trace(), 1.0, 1e-15);
  const auto clipped = make_density(diag({1.0 + 5e-9, -5e-9}));
  EXPECT_GE(clipped.min_eigenvalue(), 0.0);
}

TEST(PureState, NormValidation) {
  Vector v(2);
  v << 1, 1;
  EXPECT_THROW(PureState{v}, ValidationError);
  const auto p = PureState::normalized(v);
  EXPECT_NEAR(p.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.projector().matrix()(0, 1).real(), 0.5, 1e-15);
  EXPECT_THROW(PureState::normalized(Vector::Zero(3)), ValidationError);
}

TEST(ProbDist, ClipAndSum) {
  const ProbDist p({1.0 + 1e-15, -1e-15});
  EXPECT_EQ(p[1], 0.0);
  EXPECT_THROW(ProbDist({1.1, -0.1}), ValidationError);
  EXPECT_THROW(ProbDist({0.5, 0.4}), ValidationError);
  EXPECT_THROW(ProbDist(std::vector<double>{}), DimensionError);
}

TEST(SignedVector, DeclaredTotal) {
  EXPECT_NO_THROW(SignedVector({0.3, -0.3}));
  EXPECT_THROW(SignedVector({0.3, -0.2}), ValidationError);
  EXPECT_NO_THROW(SignedVector({0.3, 0.7}, 1.0));
}

TEST(RandomGenerators, Determinism) {
  const auto a = random_density(2, 2, 42), b = random_density(2, 2, 42);
  EXPECT_EQ(a.matrix(), b.matrix());
  EXPECT_NE(random_density(2, 2, 43).matrix(), a.matrix());
  EXPECT_EQ(random_pure(3, 1).amplitudes(), random_pure(3, 1).amplitudes());
  const auto c1 = random_channel(3, 2, 2, 11), c2 = random_channel(3, 2, 2, 11);
  for (std::size_t k = 0; k < c1.kraus().size(); ++k) EXPECT_EQ(c1.kraus()[k], c2.kraus()[k]);
}

TEST(RandomGenerators, RankAndNorm) {
  const auto rho = random_density(4, 2, 7);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  int above = 0;
  for (Eigen::Index i = 0; i < 4; ++i) above += es.eigenvalues()(i) > 1e-10;
  EXPECT_EQ(above, 2);
  EXPECT_NEAR(random_pure(3, 1).amplitudes().norm(), 1.0, 1e-12);
}

TEST(RandomGenerators, FullRankByDefault) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    EXPECT_GT(random_density(d, d, seed).min_eigenvalue(), 0.0);
  }
}

TEST(RandomChannel, Examples) {
  const auto u = random_channel(2, 2, 1, 3);
  ASSERT_EQ(u.kraus().size(), 1u);
  const Matrix& k = u.kraus()[0];
  EXPECT_LT((k.adjoint() * k - Matrix::Identity(2, 2)).norm(), 1e-9);
  EXPECT_LT((k * k.adjoint() - Matrix::Identity(2, 2)).norm(), 1e-9);

  const auto c = random_channel(2, 2, 4, 5);
  EXPECT_NO_THROW(apply_channel(c, DensityMatrix::maximally_mixed(2)));

  const auto r = random_channel(3, 2, 2, 6);
  EXPECT_EQ(r.dim_in(), 3);
  EXPECT_EQ(r.dim_out(), 2);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& kk : r.kraus()) sum += kk.adjoint() * kk;
  EXPECT_LT((sum - Matrix::Identity(3, 3)).norm(), 1e-9);
}

TEST(Channel, RejectsIncomplete) {
  EXPECT_THROW(Channel({Matrix(0.9 * Matrix::Identity(2, 2))}), ValidationError);
  EXPECT_THROW(Channel({Matrix::Identity(2, 2), Matrix::Zero(3, 2)}), DimensionError);
}

TEST(ApplyChannel, Examples) {
  const auto rho = random_density(3, 3, 17);
  EXPECT_LT((apply_channel(Channel::identity(3), rho).matrix() - rho.matrix()).norm(), 1e-14);

  const auto q = random_density(2, 2, 18);
  const auto out = apply_channel(Channel::fully_depolarizing_qubit(), q);
  EXPECT_LT((out.matrix() - Matrix::Identity(2, 2) / 2.0).norm(), 1e-14);

  Matrix prep(2, 3);
  prep << 1, 0, 1 / std::sqrt(2.0), 0, 1, 1 / std::sqrt(2.0);
  const ProbDist p({0.2, 0.3, 0.5});
  Matrix expected = Matrix::Zero(2, 2);
  for (int x = 0; x < 3; ++x) expected += p[static_cast<std::size_t>(x)] * prep.col(x) * prep.col(x).adjoint();
  EXPECT_LT((apply_channel(Channel::preparation(prep), embed(p)).matrix() - expected).norm(), 1e-14);
}

TEST(ApplyChannel, PreservesStatesProperty) {
  Rng rng(606);
  for (int trial = 0; trial < 500; ++trial) {
    const int din = 2 + trial % 5, dout = 2 + (trial / 5) % 5;
    const int k = (din + dout - 1) / dout + trial % 3;
    const auto c = random_channel(din, dout, k, rng);
    const auto rho = random_density(din, rng);
    Matrix out = Matrix::Zero(dout, dout);
    for (const auto& kk : c.kraus()) out += kk * rho.matrix() * kk.adjoint();
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> es(out);
    EXPECT_GE(es.eigenvalues()(0), -1e-10);
    EXPECT_NO_THROW(apply_channel(c, rho));
  }
}

TEST(Measure, Examples) {
  const auto comp = Povm::from_frame(Matrix::Identity(2, 2));
  const auto p = measure(comp, revfid::testing::diag_state({0.3, 0.7}));
  EXPECT_NEAR(p[0], 0.3, 1e-15);
  EXPECT_NEAR(p[1], 0.7, 1e-15);

  const Povm trivial({HermitianMatrix::identity(2)});
  const auto one = measure(trivial, random_density(2, 2, 1));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0], 1.0, 1e-12);

  Matrix xb(2, 2);
  xb << 1, 1, 1, -1;
  xb /= std::sqrt(2.0);
  const auto h = measure(Povm::from_frame(xb), revfid::testing::diag_state({1, 0}));
  EXPECT_NEAR(h[0], 0.5, 1e-15);
  EXPECT_NEAR(h[1], 0.5, 1e-15);
}

TEST(Measure, IncompletePovmRejected) {
  EXPECT_THROW(Povm({HermitianMatrix(diag({1, 0}))}), ValidationError);
  EXPECT_THROW(Povm({HermitianMatrix(diag({1.5, 1})), HermitianMatrix(diag({-0.5, 0}))}), ValidationError);
}

TEST(Measure, SumsToOneProperty) {
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 5;
    const auto rho = random_density(d, rng);
    const auto p = measure(Povm::from_frame(random_unitary(d, rng)), rho);
    double s = 0;
    for (double w : p.weights()) s += w;
    EXPECT_NEAR(s, 1.0, 1e-10);
  }
}

TEST(Measure, DiagonalChannel) {
  const auto dep = Channel::fully_depolarizing_qubit();
  const auto p = measure(dep, random_density(2, 2, 9));
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_THROW(measure(Channel::identity(2), make_density(0.5 * (Matrix(Matrix::Identity(2, 2)) + pauli_x()))), ValidationError);
}

TEST(Tensor, Examples) {
  const auto rho = random_density(3, 3, 4);
  const auto one = make_density(Matrix::Identity(1, 1));
  EXPECT_LT((tensor(rho, one).matrix() - rho.matrix()).norm(), 1e-15);

  const auto t = tensor(revfid::testing::diag_state({0.25, 0.75}), revfid::testing::diag_state({0.4, 0.6}));
  EXPECT_LT((t.matrix() - diag({0.1, 0.15, 0.3, 0.45})).norm(), 1e-15);

  const auto pp = tensor(random_pure(2, 3).projector(), random_pure(3, 4).projector());
  Eigen::SelfAdjointEigenSolver<Matrix> es(pp.matrix());
  int above = 0;
  for (Eigen::Index i = 0; i < 6; ++i) above += es.eigenvalues()(i) > 1e-10;
  EXPECT_EQ(above, 1);
}
