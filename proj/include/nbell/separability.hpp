#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "nbell/states.hpp"

namespace nbell {

inline constexpr int kMaxEnumerationQubits = 8;

/// Stirling number of the second kind S(n, k).
std::uint64_t stirling2(int n, int k);

/// Lazily enumerates every set partition of {1..n} with at least k_min blocks,
/// in lexicographic order of restricted growth strings.
class PartitionEnumeration {
public:
  PartitionEnumeration(int n, int k_min);

  int n() const noexcept { return n_; }
  int k_min() const noexcept { return k_min_; }

  /// Next qualifying partition, or nullopt once exhausted.
  std::optional<PartitionSpec> next();

  /// Sum of S(n, j) for j = k_min..n.
  std::uint64_t expected_count() const;

  class iterator {
  public:
    using value_type = PartitionSpec;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(PartitionEnumeration* owner) : owner_(owner) { ++*this; }

    const PartitionSpec& operator*() const { return *current_; }
    const PartitionSpec* operator->() const { return &*current_; }
    iterator& operator++() {
      current_ = owner_->next();
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return !current_.has_value(); }

  private:
    PartitionEnumeration* owner_ = nullptr;
    std::optional<PartitionSpec> current_;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

private:
  bool advance();
  PartitionSpec materialize() const;

  int n_;
  int k_min_;
  std::vector<int> rgs_;  // rgs_[i] is the block of qubit i+1
  bool started_ = false;
  bool exhausted_ = false;
};

PartitionEnumeration enumerate_partitions(int n, int k_min);

/// Uniformly random set partition of {1..n} with exactly `blocks` blocks.
PartitionSpec sample_partition(int n, int blocks, Rng& rng);

/// Largest antidiagonal modulus a k-separable state can have: (1/2)^k.
Real max_antidiagonal_bound(int k);

struct AntidiagonalBoundCheck {
  Real max_modulus = 0.0;
  bool satisfied = false;
};

/// Tests the caller's claim that `state` is a product over `partition`.
AntidiagonalBoundCheck verify_antidiagonal_bound(const DensityMatrix& state, const PartitionSpec& partition);
AntidiagonalBoundCheck verify_antidiagonal_bound(const PureState& state, const PartitionSpec& partition);

}  // namespace nbell
