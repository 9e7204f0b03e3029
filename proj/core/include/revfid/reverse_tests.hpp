#pragma once

#include <cstdint>
#include <vector>

#include "revfid/states.hpp"

namespace revfid {

/// Preparation map delta_x -> |phi_x><phi_x| together with the two classical
/// distributions it pushes forward. `prep` is dim x m with unit-norm columns.
class ReverseTest {
 public:
  ReverseTest(Matrix prep, ProbDist p, ProbDist q);

  Eigen::Index dim() const noexcept { return prep_.rows(); }
  std::size_t size() const noexcept { return p_.size(); }
  const Matrix& prep() const noexcept { return prep_; }
  const ProbDist& p() const noexcept { return p_; }
  const ProbDist& q() const noexcept { return q_; }

  /// sum_x w(x) |phi_x><phi_x|
  Matrix push_forward(const ProbDist& w) const;
  /// Classical fidelity of (p, q).
  double fidelity() const;

 private:
  Matrix prep_;
  ProbDist p_;
  ProbDist q_;
};

struct VerificationReport {
  double rho_residual = 0.0;    // || sum p |phi><phi| - rho ||_1
  double sigma_residual = 0.0;  // || sum q |phi><phi| - sigma ||_1
  double fidelity_of_pq = 0.0;
  double tolerance = 0.0;
  bool passes = false;
};

VerificationReport verify_reverse_test(const ReverseTest& rt, const DensityMatrix& rho,
                                       const DensityMatrix& sigma, double tol);

/// Minimal reverse test: columns are the normalized sqrt(rho) e_x for the
/// eigenvectors e_x of T, with p(x) = <e_x|rho|e_x> and
/// q(x) = lambda_x^2 <e_x|rho|e_x>. Its classical fidelity equals f_min.
ReverseTest minimal_reverse_test(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Same construction in a caller-supplied orthonormal eigenframe of T. Any
/// choice of basis inside degenerate eigenspaces is admissible; a frame that
/// does not diagonalize T raises ValidationError.
ReverseTest minimal_reverse_test_in_frame(const DensityMatrix& rho, const DensityMatrix& sigma,
                                          const Matrix& frame);

struct ContractionResiduals {
  double intertwining = 0.0;  // || T A - A^dagger T ||_F
  double positivity = 0.0;    // max(0, -min eig(T A))
  double norm_excess = 0.0;   // max(0, ||A||_op - 1)

  bool valid(double tol) const {
    return intertwining <= tol && positivity <= tol && norm_excess <= tol;
  }
};

ContractionResiduals contraction_residuals(const HermitianMatrix& t, const Matrix& a);

/// A = T^-1 H for a seeded Ginibre PSD H, rescaled into the unit ball. Then
/// T A = H >= 0 and T A = A^dagger T.
Matrix sample_contraction(const HermitianMatrix& t, std::uint64_t seed);

struct GeneralReverseTestParams {
  Matrix a_matrix;          // A, dim x dim
  Matrix a_prime;           // A', dim x (env_dim - dim); [A A'] has orthonormal rows
  Matrix c_block;           // C
  HermitianMatrix t_tilde;  // [[T A, T A'], [A'^dagger T, C]]
  Matrix frame;             // V with t_tilde = V D V^dagger
};

struct GeneralReverseTest {
  ReverseTest test;
  GeneralReverseTestParams params;
};

/// Reverse test built from a contraction A on an alphabet of size env_dim.
/// C = A'^dagger T (T A)^+ T A' + eps I with eps = 1e-9 tr T, so the Schur
/// complement of t_tilde is eps I. Columns of [sqrt(rho) 0] V with norm below
/// 1e-12 are dropped. The classical fidelity is tr sqrt(rho) T A sqrt(rho),
/// at most f_min, with equality at A = 1.
GeneralReverseTest general_reverse_test(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const Matrix& a, Eigen::Index env_dim);

struct PureTargetReverseTest {
  ReverseTest test;
  double c = 0.0;  // weight of the target column in p
};

/// Optimal reverse test of {rho, |phi>}: q = delta_{x0}, p(x0) = c maximal with
/// rho - c |phi><phi| >= 0; the remainder of rho is spread over its own
/// eigenvectors.
PureTargetReverseTest pure_target_reverse_test(const DensityMatrix& rho, const PureState& phi);

struct MixtureComponent {
  ReverseTest test;
  double lambda = 0.0;
  double mu = 0.0;
};

/// Block-diagonal union of component tests over the alphabet X x Y with
/// p~(x, y) = lambda_y p_y(x), q~(x, y) = mu_y q_y(x).
ReverseTest mixture_reverse_test(const std::vector<MixtureComponent>& components);

struct WFactorResiduals {
  double rho_factor = 0.0;     // || W_rho W_rho^dagger - rho ||_F
  double sigma_factor = 0.0;   // || W_sigma W_sigma^dagger - sigma ||_F
  double hermiticity = 0.0;    // || W_rho W_sigma^dagger - W_sigma W_rho^dagger ||_F
  double positivity = 0.0;     // max(0, -min eig(W_rho W_sigma^dagger))

  double max() const;
};

struct HiddenPair {
  DensityMatrix rho_prime;
  DensityMatrix sigma_prime;
  WFactorResiduals residuals;
};

/// rho' = W_rho^dagger W_rho = rho and sigma' = W_sigma^dagger W_sigma = T rho T
/// for W_rho = sqrt(rho), W_sigma = sqrt(rho) T. F(rho', sigma') = f_min(rho, sigma).
/// Throws ValidationError if the W-factor residuals exceed 1e-9.
HiddenPair hidden_pair(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace revfid
