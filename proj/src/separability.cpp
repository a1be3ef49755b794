#include "nbell/separability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbell/correlation.hpp"

namespace nbell {

std::uint64_t stirling2(int n, int k) {
  if (n < 0 || k < 0) return 0;
  // S(i, j) = j S(i-1, j) + S(i-1, j-1), row by row.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] =
          static_cast<std::uint64_t>(j) * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j - 1)];
    }
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(k)];
}

PartitionEnumeration::PartitionEnumeration(int n, int k_min) : n_(n), k_min_(k_min) {
  if (n < 1) throw InvalidArgument("enumerate_partitions: n must be positive");
  if (n > kMaxEnumerationQubits) {
    throw InvalidArgument("enumerate_partitions: exhaustive enumeration refused for n > " +
                          std::to_string(kMaxEnumerationQubits) + "; use sampling");
  }
  if (k_min < 1 || k_min > n) throw InvalidArgument("enumerate_partitions: k_min must lie in 1..n");
  rgs_.assign(static_cast<std::size_t>(n), 0);
}

std::uint64_t PartitionEnumeration::expected_count() const {
  std::uint64_t total = 0;
  for (int j = k_min_; j <= n_; ++j) total += stirling2(n_, j);
  return total;
}

bool PartitionEnumeration::advance() {
  if (!started_) {
    started_ = true;
    return true;
  }
  // prefix_max[i] = max(rgs_[0..i-1])
  std::vector<int> prefix_max(rgs_.size(), 0);
  for (std::size_t i = 1; i < rgs_.size(); ++i) prefix_max[i] = std::max(prefix_max[i - 1], rgs_[i - 1]);
  for (std::size_t i = rgs_.size(); i-- > 1;) {
    if (rgs_[i] <= prefix_max[i]) {
      ++rgs_[i];
      std::fill(rgs_.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs_.end(), 0);
      return true;
    }
  }
  return false;
}

PartitionSpec PartitionEnumeration::materialize() const {
  const int blocks = *std::max_element(rgs_.begin(), rgs_.end()) + 1;
  std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks));
  for (std::size_t i = 0; i < rgs_.size(); ++i) out[static_cast<std::size_t>(rgs_[i])].push_back(static_cast<int>(i) + 1);
  return PartitionSpec::from_blocks(std::move(out));
}

std::optional<PartitionSpec> PartitionEnumeration::next() {
  while (!exhausted_) {
    if (!advance()) {
      exhausted_ = true;
      break;
    }
    const int blocks = *std::max_element(rgs_.begin(), rgs_.end()) + 1;
    if (blocks >= k_min_) return materialize();
  }
  return std::nullopt;
}

PartitionEnumeration enumerate_partitions(int n, int k_min) { return PartitionEnumeration(n, k_min); }

PartitionSpec sample_partition(int n, int blocks, Rng& rng) {
  if (n < 1 || n > kMaxPureQubits) throw InvalidArgument("sample_partition: n out of range");
  if (blocks < 1 || blocks > n) throw InvalidArgument("sample_partition: block count must lie in 1..n");

  // ways[i][j]: completions with i elements left and j blocks open that end with exactly `blocks`.
  const auto rows = static_cast<std::size_t>(n) + 1;
  const auto cols = static_cast<std::size_t>(blocks) + 2;
  std::vector<double> ways(rows * cols, 0.0);
  auto at = [&](int i, int j) -> double& { return ways[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)]; };
  at(0, blocks) = 1.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= blocks; ++j) {
      at(i, j) = j * at(i - 1, j) + (j + 1 <= blocks ? at(i - 1, j + 1) : 0.0);
    }
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<int>> out;
  int open = 0;
  for (int q = 1; q <= n; ++q) {
    const int left = n - q + 1;
    const double total = at(left, open);
    const double fresh = at(left - 1, open + 1);
    const double u = unit(rng) * total;
    if (open == 0 || u < fresh) {
      out.push_back({q});
      ++open;
    } else {
      // Existing blocks are equally likely.
      auto choice = static_cast<int>((u - fresh) / at(left - 1, open));
      choice = std::clamp(choice, 0, open - 1);
      out[static_cast<std::size_t>(choice)].push_back(q);
    }
  }
  return PartitionSpec::from_blocks(std::move(out));
}

Real max_antidiagonal_bound(int k) {
  if (k < 1) throw InvalidArgument("max_antidiagonal_bound: k must be positive");
  return std::ldexp(1.0, -k);
}

namespace {

AntidiagonalBoundCheck check_profile(const AntidiagonalProfile& profile, const PartitionSpec& partition) {
  if (profile.n_qubits != partition.n_qubits()) {
    throw InvalidArgument("verify_antidiagonal_bound: partition covers " + std::to_string(partition.n_qubits()) +
                          " qubits, state has " + std::to_string(profile.n_qubits));
  }
  AntidiagonalBoundCheck check;
  check.max_modulus = profile.values.cwiseAbs().maxCoeff();
  check.satisfied = check.max_modulus <= max_antidiagonal_bound(partition.k()) + 1e-12;
  return check;
}

}  // namespace

AntidiagonalBoundCheck verify_antidiagonal_bound(const DensityMatrix& state, const PartitionSpec& partition) {
  return check_profile(antidiagonal_profile(state), partition);
}

AntidiagonalBoundCheck verify_antidiagonal_bound(const PureState& state, const PartitionSpec& partition) {
  return check_profile(antidiagonal_profile(state), partition);
}

}  // namespace nbell
