#include "nbell/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nbell/separability.hpp"

namespace nbell {

namespace detail {

struct StateAccess {
  static PureState pure(int n, VectorXc amplitudes) { return PureState(n, std::move(amplitudes)); }
  static DensityMatrix density(int n, MatrixXc matrix) { return DensityMatrix(n, std::move(matrix)); }
};

}  // namespace detail

namespace {

using detail::StateAccess;

int qubits_from_dimension(Eigen::Index dim, const char* what) {
  if (dim < 2) throw InvalidArgument(std::string(what) + ": dimension must be at least 2");
  if ((dim & (dim - 1)) != 0) throw InvalidArgument(std::string(what) + ": dimension is not a power of two");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

void check_qubit_count(int n, int cap, const char* what) {
  if (n < 1) throw InvalidArgument(std::string(what) + ": qubit count must be positive");
  if (n > cap) {
    throw InvalidArgument(std::string(what) + ": " + std::to_string(n) + " qubits exceeds the limit of " +
                          std::to_string(cap));
  }
}

bool all_finite(const auto& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

std::uint64_t local_index(std::uint64_t global, const std::vector<int>& block, int n) {
  std::uint64_t local = 0;
  for (int q : block) local = (local << 1) | static_cast<std::uint64_t>(bit_of(global, q, n));
  return local;
}

template <typename StateT>
void check_assignment(std::span<const StateT> states, const PartitionSpec& assignment) {
  if (states.size() != static_cast<std::size_t>(assignment.k())) {
    throw InvalidArgument("tensor_product: " + std::to_string(states.size()) + " factors for " +
                          std::to_string(assignment.k()) + " blocks");
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (static_cast<std::size_t>(states[i].n_qubits()) != assignment.blocks()[i].size()) {
      throw InvalidArgument("tensor_product: factor " + std::to_string(i) + " has " +
                            std::to_string(states[i].n_qubits()) + " qubits but its block has " +
                            std::to_string(assignment.blocks()[i].size()));
    }
  }
}

}  // namespace

PureState PureState::from_amplitudes(VectorXc amplitudes) {
  const int n = qubits_from_dimension(amplitudes.size(), "pure state");
  check_qubit_count(n, kMaxPureQubits, "pure state");
  if (!all_finite(amplitudes)) throw InvalidArgument("pure state: non-finite amplitude");
  const Real norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidArgument("pure state: squared norm " + std::to_string(norm2) + " differs from 1");
  }
  return PureState(n, std::move(amplitudes));
}

PureState PureState::normalized(VectorXc amplitudes) {
  const int n = qubits_from_dimension(amplitudes.size(), "pure state");
  check_qubit_count(n, kMaxPureQubits, "pure state");
  if (!all_finite(amplitudes)) throw InvalidArgument("pure state: non-finite amplitude");
  const Real norm = amplitudes.norm();
  if (norm == 0.0) throw InvalidArgument("pure state: zero vector cannot be normalized");
  amplitudes /= norm;
  return PureState(n, std::move(amplitudes));
}

DensityMatrix DensityMatrix::from_matrix(MatrixXc matrix) {
  if (matrix.rows() != matrix.cols()) throw InvalidArgument("density matrix: not square");
  const int n = qubits_from_dimension(matrix.rows(), "density matrix");
  check_qubit_count(n, kMaxDenseQubits, "density matrix");
  if (!all_finite(matrix)) throw InvalidArgument("density matrix: non-finite entry");

  const Real asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw InvalidArgument("density matrix: not Hermitian (max deviation " + std::to_string(asym) + ")");
  }
  const Complex trace = matrix.trace();
  if (std::abs(trace - Complex(1.0)) > kNormTolerance) {
    throw InvalidArgument("density matrix: trace " + std::to_string(trace.real()) + " differs from 1");
  }
  // rho + tol*I is positive definite iff the smallest eigenvalue exceeds -tol.
  MatrixXc shifted = 0.5 * (matrix + matrix.adjoint());
  shifted.diagonal().array() += kPsdTolerance;
  Eigen::LLT<MatrixXc> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("density matrix: not positive semidefinite");
  }
  return DensityMatrix(n, std::move(matrix));
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  check_qubit_count(state.n_qubits(), kMaxDenseQubits, "density matrix");
  MatrixXc rho = state.amplitudes() * state.amplitudes().adjoint();
  return DensityMatrix(state.n_qubits(), std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_qubit_count(n_qubits, kMaxDenseQubits, "density matrix");
  const auto dim = static_cast<Eigen::Index>(dimension(n_qubits));
  MatrixXc rho = MatrixXc::Identity(dim, dim) / static_cast<Real>(dim);
  return DensityMatrix(n_qubits, std::move(rho));
}

int n_qubits(const State& state) {
  return std::visit([](const auto& s) { return s.n_qubits(); }, state);
}

PartitionSpec PartitionSpec::from_blocks(std::vector<std::vector<int>> blocks) {
  if (blocks.empty()) throw InvalidArgument("partition: no blocks");
  int n = 0;
  for (auto& block : blocks) {
    if (block.empty()) throw InvalidArgument("partition: empty block");
    std::sort(block.begin(), block.end());
    n += static_cast<int>(block.size());
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (const auto& block : blocks) {
    for (int q : block) {
      if (q < 1 || q > n) {
        throw InvalidArgument("partition: qubit " + std::to_string(q) + " outside 1.." + std::to_string(n));
      }
      if (seen[static_cast<std::size_t>(q)]) {
        throw InvalidArgument("partition: qubit " + std::to_string(q) + " appears in two blocks");
      }
      seen[static_cast<std::size_t>(q)] = true;
    }
  }
  return PartitionSpec(n, std::move(blocks));
}

PartitionSpec PartitionSpec::canonical() const {
  auto blocks = blocks_;
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return PartitionSpec(n_qubits_, std::move(blocks));
}

PureState make_ghz(int n_qubits) {
  check_qubit_count(n_qubits, kMaxPureQubits, "make_ghz");
  VectorXc amps = VectorXc::Zero(static_cast<Eigen::Index>(dimension(n_qubits)));
  const Real h = 1.0 / std::sqrt(2.0);
  amps(0) = h;
  amps(amps.size() - 1) = h;
  return StateAccess::pure(n_qubits, std::move(amps));
}

PureState basis_state(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  check_qubit_count(n, kMaxPureQubits, "basis_state");
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("basis_state: bitstring must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  VectorXc amps = VectorXc::Zero(static_cast<Eigen::Index>(dimension(n)));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateAccess::pure(n, std::move(amps));
}

PureState product_state(std::span<const std::pair<Complex, Complex>> factors) {
  std::vector<PureState> singles;
  std::vector<std::vector<int>> blocks;
  singles.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    VectorXc v(2);
    v << factors[i].first, factors[i].second;
    singles.push_back(PureState::normalized(std::move(v)));
    blocks.push_back({static_cast<int>(i) + 1});
  }
  return tensor_product(std::span<const PureState>(singles), PartitionSpec::from_blocks(std::move(blocks)));
}

PureState tensor_product(std::span<const PureState> states, const PartitionSpec& assignment) {
  check_assignment(states, assignment);
  const int n = assignment.n_qubits();
  check_qubit_count(n, kMaxPureQubits, "tensor_product");
  const auto dim = dimension(n);
  VectorXc amps(static_cast<Eigen::Index>(dim));
  for (std::uint64_t b = 0; b < dim; ++b) {
    Complex a(1.0);
    for (std::size_t i = 0; i < states.size(); ++i) {
      a *= states[i].amplitude(local_index(b, assignment.blocks()[i], n));
    }
    amps(static_cast<Eigen::Index>(b)) = a;
  }
  return StateAccess::pure(n, std::move(amps));
}

DensityMatrix tensor_product(std::span<const DensityMatrix> states, const PartitionSpec& assignment) {
  check_assignment(states, assignment);
  const int n = assignment.n_qubits();
  check_qubit_count(n, kMaxDenseQubits, "tensor_product");
  const auto dim = dimension(n);
  const std::size_t m = states.size();

  std::vector<std::uint64_t> locals(dim * m);
  for (std::uint64_t b = 0; b < dim; ++b) {
    for (std::size_t i = 0; i < m; ++i) locals[b * m + i] = local_index(b, assignment.blocks()[i], n);
  }
  MatrixXc rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    for (std::uint64_t row = 0; row < dim; ++row) {
      Complex v(1.0);
      for (std::size_t i = 0; i < m; ++i) {
        v *= states[i].matrix()(static_cast<Eigen::Index>(locals[row * m + i]),
                                static_cast<Eigen::Index>(locals[col * m + i]));
      }
      rho(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return StateAccess::density(n, std::move(rho));
}

PureState permute_qubits(const PureState& state, std::span<const int> order) {
  const int n = state.n_qubits();
  if (static_cast<int>(order.size()) != n) throw InvalidArgument("permute_qubits: order has wrong length");
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < n; ++j) {
    if (sorted[static_cast<std::size_t>(j)] != j + 1) throw InvalidArgument("permute_qubits: not a permutation");
  }
  const auto dim = state.dim();
  VectorXc out(static_cast<Eigen::Index>(dim));
  for (std::uint64_t b = 0; b < dim; ++b) {
    std::uint64_t src = 0;
    for (int j = 1; j <= n; ++j) {
      const int bit = bit_of(b, j, n);
      src |= static_cast<std::uint64_t>(bit) << (n - order[static_cast<std::size_t>(j - 1)]);
    }
    out(static_cast<Eigen::Index>(b)) = state.amplitude(src);
  }
  return StateAccess::pure(n, std::move(out));
}

DensityMatrix mix(std::span<const std::pair<Real, DensityMatrix>> components) {
  if (components.empty()) throw InvalidArgument("mix: no components");
  const int n = components.front().second.n_qubits();
  Real total = 0.0;
  for (const auto& [w, rho] : components) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("mix: negative or non-finite weight");
    if (rho.n_qubits() != n) throw InvalidArgument("mix: components have different qubit counts");
    total += w;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidArgument("mix: weights sum to " + std::to_string(total) + ", not 1");
  }
  MatrixXc out = MatrixXc::Zero(components.front().second.matrix().rows(), components.front().second.matrix().cols());
  for (const auto& [w, rho] : components) out += w * rho.matrix();
  return StateAccess::density(n, std::move(out));
}

DensityMatrix add_white_noise(const DensityMatrix& rho0, Real visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw InvalidArgument("add_white_noise: visibility must lie in [0, 1]");
  }
  const auto dim = rho0.matrix().rows();
  MatrixXc out = visibility * rho0.matrix();
  out.diagonal().array() += (1.0 - visibility) / static_cast<Real>(dim);
  return StateAccess::density(rho0.n_qubits(), std::move(out));
}

PureState random_pure_state(int n_qubits, Rng& rng) {
  check_qubit_count(n_qubits, kMaxPureQubits, "random_pure_state");
  std::normal_distribution<Real> gauss(0.0, 1.0);
  VectorXc amps(static_cast<Eigen::Index>(dimension(n_qubits)));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const Real re = gauss(rng);
    const Real im = gauss(rng);
    amps(i) = Complex(re, im);
  }
  return PureState::normalized(std::move(amps));
}

DensityMatrix random_density_matrix(int n_qubits, int rank, Rng& rng) {
  check_qubit_count(n_qubits, kMaxDenseQubits, "random_density_matrix");
  const auto dim = static_cast<Eigen::Index>(dimension(n_qubits));
  if (rank < 1 || rank > dim) throw InvalidArgument("random_density_matrix: rank out of range");
  std::normal_distribution<Real> gauss(0.0, 1.0);
  MatrixXc g(dim, rank);
  for (Eigen::Index c = 0; c < rank; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Real re = gauss(rng);
      const Real im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  }
  MatrixXc rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return StateAccess::density(n_qubits, std::move(rho));
}

DensityMatrix sample_k_separable(int n_qubits, int k, int n_terms, std::uint64_t seed) {
  check_qubit_count(n_qubits, kMaxDenseQubits, "sample_k_separable");
  if (k < 1 || k > n_qubits) throw InvalidArgument("sample_k_separable: k must lie in 1..n");
  if (n_terms < 1) throw InvalidArgument("sample_k_separable: need at least one term");

  Rng rng(seed);
  std::exponential_distribution<Real> expo(1.0);
  std::vector<std::pair<Real, DensityMatrix>> terms;
  terms.reserve(static_cast<std::size_t>(n_terms));
  Real weight_sum = 0.0;
  for (int t = 0; t < n_terms; ++t) {
    std::uniform_int_distribution<int> pick_blocks(k, n_qubits);
    const PartitionSpec partition = sample_partition(n_qubits, pick_blocks(rng), rng);
    std::vector<PureState> factors;
    factors.reserve(static_cast<std::size_t>(partition.k()));
    for (const auto& block : partition.blocks()) {
      factors.push_back(random_pure_state(static_cast<int>(block.size()), rng));
    }
    const PureState product = tensor_product(std::span<const PureState>(factors), partition);
    const Real w = expo(rng);
    weight_sum += w;
    terms.emplace_back(w, DensityMatrix::from_pure(product));
  }
  for (auto& term : terms) term.first /= weight_sum;
  return mix(terms);
}

}  // namespace nbell
