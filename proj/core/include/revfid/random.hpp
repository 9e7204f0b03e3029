#pragma once

#include <cstdint>
#include <random>

#include "revfid/states.hpp"

namespace revfid {

/// Seeded generator stream. Two streams with the same (seed, stream) pair
/// produce identical sequences; different stream indices are independent,
/// so parallel trials never share generator state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal();
  std::uint64_t next_u64() { return engine_(); }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// rows x cols matrix of independent standard complex normals.
Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// G G^dagger / tr with G dim x rank Ginibre.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);
DensityMatrix random_density(int dim, Rng& rng);
PureState random_pure(int dim, std::uint64_t seed);
PureState random_pure(int dim, Rng& rng);

/// Random isometry C^dim_in -> C^dim_out (x) C^kraus_count from the QR factor
/// of a Ginibre matrix, sliced into Kraus operators.
Channel random_channel(int dim_in, int dim_out, int kraus_count, std::uint64_t seed);
Channel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng);

/// Haar-distributed unitary (QR of Ginibre with phase correction).
Matrix random_unitary(int dim, Rng& rng);

/// Traceless Hermitian direction scaled so that
/// || rho^-1/2 H rho^-1/2 ||_op = scale.
HermitianMatrix random_tangent(const DensityMatrix& rho, double scale, Rng& rng);

}  // namespace revfid
