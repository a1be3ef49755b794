#include "doctest.h"

#include <set>

#include "nbell/correlation.hpp"
#include "nbell/separability.hpp"
#include "oracles.hpp"

using namespace nbell;

namespace {

std::vector<PartitionSpec> collect(int n, int k_min) {
  std::vector<PartitionSpec> out;
  for (const PartitionSpec& p : enumerate_partitions(n, k_min)) out.push_back(p);
  return out;
}

PureState plus_x() {
  const Real h = 1.0 / std::sqrt(2.0);
  return PureState::from_amplitudes(oracle::vec({h, h}));
}

}  // namespace

TEST_CASE("stirling2") {
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(stirling2(n, k) == oracle::stirling2_explicit(n, k));
  }
  CHECK(stirling2(3, 4) == 0);
}

TEST_CASE("enumerate_partitions examples") {
  SUBCASE("n=3, k_min=2") {
    const auto parts = collect(3, 2);
    REQUIRE(parts.size() == 4);
    std::set<std::vector<std::vector<int>>> seen;
    for (const auto& p : parts) seen.insert(p.canonical().blocks());
    CHECK(seen.count({{1}, {2, 3}}) == 1);
    CHECK(seen.count({{1, 3}, {2}}) == 1);
    CHECK(seen.count({{1, 2}, {3}}) == 1);
    CHECK(seen.count({{1}, {2}, {3}}) == 1);
  }
  SUBCASE("n=4, k_min=2") { CHECK(collect(4, 2).size() == 14); }
  SUBCASE("n=2, k_min=2") {
    const auto parts = collect(2, 2);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == PartitionSpec::from_blocks({{1}, {2}}));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(enumerate_partitions(3, 0), InvalidArgument);
    CHECK_THROWS_AS(enumerate_partitions(3, 4), InvalidArgument);
    CHECK_THROWS_AS(enumerate_partitions(9, 1), InvalidArgument);
  }
}

TEST_CASE("enumeration counts, uniqueness and order") {
  for (int n = 1; n <= 8; ++n) {
    for (int k_min = 1; k_min <= n; ++k_min) {
      std::uint64_t expected = 0;
      for (int j = k_min; j <= n; ++j) expected += oracle::stirling2_explicit(n, j);
      auto enumeration = enumerate_partitions(n, k_min);
      CHECK(enumeration.expected_count() == expected);
      std::set<std::vector<std::vector<int>>> seen;
      std::uint64_t count = 0;
      for (const PartitionSpec& p : enumeration) {
        CHECK(p.k() >= k_min);
        CHECK(p.n_qubits() == n);
        seen.insert(p.canonical().blocks());
        ++count;
      }
      CHECK(count == expected);
      CHECK(seen.size() == expected);
    }
  }
  // Restricted growth strings 00, 01 for n = 2 give {12} before {1}{2}.
  const auto parts = collect(2, 1);
  CHECK(parts[0] == PartitionSpec::from_blocks({{1, 2}}));
  CHECK(parts[1] == PartitionSpec::from_blocks({{1}, {2}}));
}

TEST_CASE("sample_partition covers every partition") {
  Rng rng(3);
  std::set<std::vector<std::vector<int>>> seen;
  for (int i = 0; i < 2000; ++i) {
    const PartitionSpec p = sample_partition(5, 3, rng);
    CHECK(p.k() == 3);
    seen.insert(p.canonical().blocks());
  }
  CHECK(seen.size() == stirling2(5, 3));
}

TEST_CASE("max_antidiagonal_bound") {
  CHECK(max_antidiagonal_bound(1) == 0.5);
  CHECK(max_antidiagonal_bound(2) == 0.25);
  CHECK(max_antidiagonal_bound(4) == 1.0 / 16);
}

TEST_CASE("verify_antidiagonal_bound examples") {
  const PartitionSpec singles = PartitionSpec::from_blocks({{1}, {2}, {3}});
  SUBCASE("GHZ3 is not a product over singletons") {
    const auto check = verify_antidiagonal_bound(DensityMatrix::from_pure(make_ghz(3)), singles);
    CHECK(check.max_modulus == doctest::Approx(0.5));
    CHECK_FALSE(check.satisfied);
  }
  SUBCASE("|+x>^3 meets 1/8 exactly") {
    const std::vector<PureState> f{plus_x(), plus_x(), plus_x()};
    const auto check = verify_antidiagonal_bound(tensor_product(std::span<const PureState>(f), singles), singles);
    CHECK(check.max_modulus == doctest::Approx(0.125));
    CHECK(check.satisfied);
  }
  SUBCASE("products over {1}{23}") {
    Rng rng(500);
    const PartitionSpec p = PartitionSpec::from_blocks({{1}, {2, 3}});
    for (int i = 0; i < 500; ++i) {
      const std::vector<PureState> f{random_pure_state(1, rng), random_pure_state(2, rng)};
      const auto check = verify_antidiagonal_bound(tensor_product(std::span<const PureState>(f), p), p);
      CHECK(check.max_modulus <= 0.25 + 1e-12);
      CHECK(check.satisfied);
    }
  }
}

TEST_CASE("products over random partitions satisfy the bound") {
  Rng rng(77);
  int failures = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + trial % 6;
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const PartitionSpec p = sample_partition(n, k, rng);
    std::vector<PureState> factors;
    for (const auto& block : p.blocks()) factors.push_back(random_pure_state(static_cast<int>(block.size()), rng));
    if (!verify_antidiagonal_bound(tensor_product(std::span<const PureState>(factors), p), p).satisfied) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("mixtures keep the bound") {
  Rng rng(88);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const int k = 1 + trial % n;
    std::vector<std::pair<Real, DensityMatrix>> components;
    for (int term = 0; term < 3; ++term) {
      const PartitionSpec p = sample_partition(n, k, rng);
      std::vector<PureState> factors;
      for (const auto& block : p.blocks()) factors.push_back(random_pure_state(static_cast<int>(block.size()), rng));
      components.emplace_back(1.0 / 3.0, DensityMatrix::from_pure(tensor_product(std::span<const PureState>(factors), p)));
    }
    const auto mixed = mix(components);
    CHECK(antidiagonal_profile(mixed).values.cwiseAbs().maxCoeff() <= max_antidiagonal_bound(k) + 1e-12);
  }
}
