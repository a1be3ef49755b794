#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nbell/types.hpp"

namespace nbell {

using Rng = std::mt19937_64;

namespace detail {
struct StateAccess;
}

/// Normalized N-qubit state vector in the computational basis, qubit 1 as the
/// most significant bit of the index.
class PureState {
public:
  /// Validates length 2^n and unit norm within kNormTolerance.
  static PureState from_amplitudes(VectorXc amplitudes);
  /// Rescales to unit norm; throws on a zero or non-finite vector.
  static PureState normalized(VectorXc amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t dim() const noexcept { return dimension(n_qubits_); }
  const VectorXc& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

private:
  friend struct detail::StateAccess;

  PureState(int n_qubits, VectorXc amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

  int n_qubits_;
  VectorXc amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite 2^N x 2^N matrix.
class DensityMatrix {
public:
  /// Full validation: shape, finiteness, Hermiticity, trace and PSD.
  static DensityMatrix from_matrix(MatrixXc matrix);
  static DensityMatrix from_pure(const PureState& state);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t dim() const noexcept { return dimension(n_qubits_); }
  const MatrixXc& matrix() const noexcept { return matrix_; }

private:
  friend struct detail::StateAccess;

  DensityMatrix(int n_qubits, MatrixXc matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {}

  int n_qubits_;
  MatrixXc matrix_;
};

using State = std::variant<PureState, DensityMatrix>;

int n_qubits(const State& state);

/// A set partition of {1..N}. Blocks keep the caller's order (it pairs blocks
/// with tensor-product factors); qubits inside a block are sorted ascending.
class PartitionSpec {
public:
  static PartitionSpec from_blocks(std::vector<std::vector<int>> blocks);

  int n_qubits() const noexcept { return n_qubits_; }
  int k() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }

  /// Blocks ordered by their smallest qubit; equal partitions compare equal.
  PartitionSpec canonical() const;

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

private:
  PartitionSpec(int n_qubits, std::vector<std::vector<int>> blocks)
      : n_qubits_(n_qubits), blocks_(std::move(blocks)) {}

  int n_qubits_;
  std::vector<std::vector<int>> blocks_;
};

PureState make_ghz(int n_qubits);
/// Computational basis state from a bitstring such as "0110".
PureState basis_state(std::string_view bits);
/// Product of single-qubit states given as (amp0, amp1) pairs, normalized per factor.
PureState product_state(std::span<const std::pair<Complex, Complex>> factors);

/// Joint state with factor i living on block i of `assignment`. The j-th qubit of a
/// factor lands on the j-th smallest qubit of its block.
PureState tensor_product(std::span<const PureState> states, const PartitionSpec& assignment);
DensityMatrix tensor_product(std::span<const DensityMatrix> states, const PartitionSpec& assignment);

/// Output qubit j (1-based) carries input qubit order[j-1].
PureState permute_qubits(const PureState& state, std::span<const int> order);

DensityMatrix mix(std::span<const std::pair<Real, DensityMatrix>> components);

/// V rho0 + (1 - V) I / 2^N.
DensityMatrix add_white_noise(const DensityMatrix& rho0, Real visibility);

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
PureState random_pure_state(int n_qubits, Rng& rng);
/// G G^dagger / tr for a 2^N x rank complex Gaussian G.
DensityMatrix random_density_matrix(int n_qubits, int rank, Rng& rng);

/// Mixture of n_terms products, each over a random partition with at least k blocks.
DensityMatrix sample_k_separable(int n_qubits, int k, int n_terms, std::uint64_t seed);

}  // namespace nbell
