#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nbell/correlation.hpp"
#include "nbell/separability.hpp"
#include "nbell/states.hpp"
#include "nbell/witness.hpp"
#include "oracles.hpp"

using namespace nbell;

namespace {

const Real kH = 1.0 / std::sqrt(2.0);

PureState plus_x() { return PureState::from_amplitudes(oracle::vec({kH, kH})); }
PureState bell() { return PureState::from_amplitudes(oracle::vec({kH, 0.0, 0.0, kH})); }

Real max_abs_diff(const VectorXc& a, const VectorXc& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("make_ghz") {
  SUBCASE("one qubit is |+x>") {
    const PureState g = make_ghz(1);
    CHECK(g.amplitude(0).real() == doctest::Approx(kH));
    CHECK(g.amplitude(1).real() == doctest::Approx(kH));
  }
  SUBCASE("three qubits") {
    const PureState g = make_ghz(3);
    for (std::uint64_t i = 0; i < 8; ++i) {
      const Real expected = (i == 0 || i == 7) ? kH : 0.0;
      CHECK(std::abs(g.amplitude(i) - Complex(expected)) < 1e-15);
    }
    CHECK(classify(State(g)).r == doctest::Approx(std::pow(kPi, 3) / 16).epsilon(1e-12));
  }
  SUBCASE("zero qubits rejected") { CHECK_THROWS_AS(make_ghz(0), InvalidArgument); }
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(PureState::from_amplitudes(oracle::vec({1.0, 1.0})), InvalidArgument);
  CHECK_THROWS_AS(PureState::from_amplitudes(oracle::vec({1.0, 0.0, 0.0})), InvalidArgument);
  CHECK_THROWS_AS(PureState::normalized(oracle::vec({0.0, 0.0})), InvalidArgument);
  CHECK_THROWS_AS(PureState::normalized(oracle::vec({std::nan(""), 0.0})), InvalidArgument);

  MatrixXc not_hermitian(2, 2);
  not_hermitian << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(not_hermitian), InvalidArgument);

  MatrixXc bad_trace = MatrixXc::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad_trace), InvalidArgument);

  MatrixXc negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(negative), InvalidArgument);

  MatrixXc coherent(2, 2);
  coherent << 0.5, 0.5, 0.5, 0.5;
  CHECK_NOTHROW(DensityMatrix::from_matrix(coherent));
}

TEST_CASE("tensor_product") {
  SUBCASE("|0> (x) |1> is |01>") {
    const std::vector<PureState> f{basis_state("0"), basis_state("1")};
    const PureState s = tensor_product(std::span<const PureState>(f), PartitionSpec::from_blocks({{1}, {2}}));
    CHECK(s.amplitude(1) == Complex(1.0));
    CHECK(s.amplitudes().cwiseAbs().sum() == doctest::Approx(1.0));
  }
  SUBCASE("|+x> on {1} with Bell on {2,3}") {
    const std::vector<PureState> f{plus_x(), bell()};
    const PureState s = tensor_product(std::span<const PureState>(f), PartitionSpec::from_blocks({{1}, {2, 3}}));
    const VectorXc expected = oracle::kron(plus_x().amplitudes(), bell().amplitudes());
    CHECK(max_abs_diff(s.amplitudes(), expected) < 1e-15);
    for (std::uint64_t i : {0u, 3u, 4u, 7u}) CHECK(s.amplitude(i).real() == doctest::Approx(0.5));
  }
  SUBCASE("Bell on {1,3} with |0> on {2}") {
    const std::vector<PureState> f{bell(), basis_state("0")};
    const PureState s = tensor_product(std::span<const PureState>(f), PartitionSpec::from_blocks({{1, 3}, {2}}));
    // Contiguous product, then swap qubits 2 and 3.
    const VectorXc contiguous = oracle::kron(bell().amplitudes(), basis_state("0").amplitudes());
    CHECK(max_abs_diff(s.amplitudes(), oracle::swap_qubits(contiguous, 2, 3, 3)) < 1e-15);
    CHECK(s.amplitude(0b000).real() == doctest::Approx(kH));
    CHECK(s.amplitude(0b101).real() == doctest::Approx(kH));
  }
  SUBCASE("density factors match the pure product") {
    const std::vector<PureState> f{bell(), plus_x()};
    const std::vector<DensityMatrix> d{DensityMatrix::from_pure(bell()), DensityMatrix::from_pure(plus_x())};
    const auto blocks = PartitionSpec::from_blocks({{1, 3}, {2}});
    const PureState pure = tensor_product(std::span<const PureState>(f), blocks);
    const DensityMatrix rho = tensor_product(std::span<const DensityMatrix>(d), blocks);
    CHECK((rho.matrix() - pure.amplitudes() * pure.amplitudes().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("errors") {
    const std::vector<PureState> f{plus_x(), plus_x()};
    CHECK_THROWS_AS(tensor_product(std::span<const PureState>(f), PartitionSpec::from_blocks({{1, 2}, {3}})),
                    InvalidArgument);
    CHECK_THROWS_AS(PartitionSpec::from_blocks({{1, 2}, {2}}), InvalidArgument);
    CHECK_THROWS_AS(PartitionSpec::from_blocks({{1}, {3}}), InvalidArgument);
    CHECK_THROWS_AS(PartitionSpec::from_blocks({{1}, {}}), InvalidArgument);
  }
}

TEST_CASE("tensor_product commutes with reordering blocks and permuting qubits") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    std::uniform_int_distribution<int> blocks_dist(1, n);
    const PartitionSpec partition = sample_partition(n, blocks_dist(rng), rng);

    // Block-symmetric factors (GHZ on each block) so the within-block order is irrelevant.
    std::vector<PureState> factors;
    for (const auto& block : partition.blocks()) factors.push_back(make_ghz(static_cast<int>(block.size())));
    const PureState joint = tensor_product(std::span<const PureState>(factors), partition);

    // Reordering the (factor, block) pairs changes nothing.
    std::vector<std::vector<int>> reversed_blocks(partition.blocks().rbegin(), partition.blocks().rend());
    std::vector<PureState> reversed_factors(factors.rbegin(), factors.rend());
    const PureState joint_reversed = tensor_product(std::span<const PureState>(reversed_factors),
                                                    PartitionSpec::from_blocks(reversed_blocks));
    CHECK(max_abs_diff(joint.amplitudes(), joint_reversed.amplitudes()) < 1e-15);

    // Permuting qubits equals building on the permuted blocks.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> position(static_cast<std::size_t>(n) + 1);
    for (int j = 1; j <= n; ++j) position[static_cast<std::size_t>(order[static_cast<std::size_t>(j - 1)])] = j;
    std::vector<std::vector<int>> moved;
    for (const auto& block : partition.blocks()) {
      std::vector<int> image;
      for (int q : block) image.push_back(position[static_cast<std::size_t>(q)]);
      moved.push_back(image);
    }
    const PureState permuted = permute_qubits(joint, order);
    const PureState rebuilt = tensor_product(std::span<const PureState>(factors), PartitionSpec::from_blocks(moved));
    CHECK(max_abs_diff(permuted.amplitudes(), rebuilt.amplitudes()) < 1e-15);
  }
}

TEST_CASE("permute_qubits agrees with explicit swaps") {
  Rng rng(5);
  const PureState psi = random_pure_state(4, rng);
  const std::vector<int> swap_23{1, 3, 2, 4};
  CHECK(max_abs_diff(permute_qubits(psi, swap_23).amplitudes(), oracle::swap_qubits(psi.amplitudes(), 2, 3, 4)) <
        1e-15);
  const std::vector<int> bad{1, 1, 2, 3};
  CHECK_THROWS_AS(permute_qubits(psi, bad), InvalidArgument);
}

TEST_CASE("mix") {
  const DensityMatrix zero = DensityMatrix::from_pure(basis_state("0"));
  const DensityMatrix one = DensityMatrix::from_pure(basis_state("1"));

  SUBCASE("identity mixture") {
    const std::vector<std::pair<Real, DensityMatrix>> c{{1.0, zero}};
    CHECK((mix(c).matrix() - zero.matrix()).norm() == 0.0);
  }
  SUBCASE("classical mixture") {
    const std::vector<std::pair<Real, DensityMatrix>> c{{0.5, zero}, {0.5, one}};
    CHECK((mix(c).matrix() - 0.5 * MatrixXc::Identity(2, 2)).norm() < 1e-15);
  }
  SUBCASE("mixture of two biseparable states keeps antidiagonals within 1/4") {
    const std::vector<PureState> a{plus_x(), bell()};
    const std::vector<PureState> b{bell(), plus_x()};
    const auto pa = tensor_product(std::span<const PureState>(a), PartitionSpec::from_blocks({{1}, {2, 3}}));
    const auto pb = tensor_product(std::span<const PureState>(b), PartitionSpec::from_blocks({{1, 2}, {3}}));
    const std::vector<std::pair<Real, DensityMatrix>> c{{0.5, DensityMatrix::from_pure(pa)},
                                                        {0.5, DensityMatrix::from_pure(pb)}};
    const auto profile = antidiagonal_profile(mix(c));
    CHECK(profile.values.size() == 4);
    CHECK(profile.values.cwiseAbs().maxCoeff() <= 0.25 + 1e-12);
  }
  SUBCASE("errors") {
    const DensityMatrix two = DensityMatrix::maximally_mixed(2);
    std::vector<std::pair<Real, DensityMatrix>> c{{-0.5, zero}, {1.5, one}};
    CHECK_THROWS_AS(mix(c), InvalidArgument);
    c = {{0.5, zero}, {0.4, one}};
    CHECK_THROWS_AS(mix(c), InvalidArgument);
    c = {{0.5, zero}, {0.5, two}};
    CHECK_THROWS_AS(mix(c), InvalidArgument);
  }
}

TEST_CASE("add_white_noise") {
  const DensityMatrix ghz = DensityMatrix::from_pure(make_ghz(3));
  CHECK((add_white_noise(ghz, 1.0).matrix() - ghz.matrix()).norm() == 0.0);
  const DensityMatrix flat = add_white_noise(ghz, 0.0);
  CHECK((flat.matrix() - MatrixXc::Identity(8, 8) / 8.0).norm() < 1e-15);
  CHECK(antidiagonal_profile(flat).values.norm() == 0.0);
  CHECK(classify(State(add_white_noise(ghz, 0.6))).r == doctest::Approx(0.6 * std::pow(kPi, 3) / 16).epsilon(1e-12));
  CHECK(classify(State(add_white_noise(ghz, 0.6))).r == doctest::Approx(1.1627).epsilon(1e-4));
  CHECK_THROWS_AS(add_white_noise(ghz, 1.01), InvalidArgument);
  CHECK_THROWS_AS(add_white_noise(ghz, -0.01), InvalidArgument);
}

TEST_CASE("add_white_noise is affine on antidiagonals") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 5;
    const DensityMatrix rho = random_density_matrix(n, 1 + trial % 2, rng);
    const Real v = std::uniform_real_distribution<Real>(0.0, 1.0)(rng);
    const VectorXc noisy = antidiagonal_profile(add_white_noise(rho, v)).values;
    CHECK((noisy - v * antidiagonal_profile(rho).values).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("constructor outputs satisfy the density-matrix invariants") {
  Rng rng(19);
  std::vector<DensityMatrix> outputs;
  outputs.push_back(random_density_matrix(3, 2, rng));
  outputs.push_back(add_white_noise(outputs.back(), 0.3));
  outputs.push_back(sample_k_separable(4, 2, 5, 99));
  const std::vector<std::pair<Real, DensityMatrix>> c{{0.25, outputs[0]}, {0.75, outputs[1]}};
  outputs.push_back(mix(c));
  for (const auto& rho : outputs) CHECK_NOTHROW(DensityMatrix::from_matrix(rho.matrix()));
  const PureState psi = random_pure_state(5, rng);
  CHECK_NOTHROW(PureState::from_amplitudes(psi.amplitudes()));
}

TEST_CASE("sample_k_separable") {
  SUBCASE("two-qubit separable samples stay below pi^2/16") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      CHECK(classify(State(sample_k_separable(2, 2, 4, seed))).r <= kPi * kPi / 16 + 1e-9);
    }
  }
  SUBCASE("fully separable single term is a pure product") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const DensityMatrix rho = sample_k_separable(3, 3, 1, seed);
      CHECK((rho.matrix() * rho.matrix()).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(antidiagonal_profile(rho).values.cwiseAbs().maxCoeff() <= 0.125 + 1e-12);
    }
  }
  SUBCASE("k = 1 is unconstrained and can be entangled") {
    Real best = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      best = std::max(best, antidiagonal_profile(sample_k_separable(2, 1, 1, seed)).values.cwiseAbs().maxCoeff());
    }
    CHECK(best > 0.25);
  }
  SUBCASE("fixed seed is reproducible") {
    CHECK((sample_k_separable(3, 2, 3, 42).matrix() - sample_k_separable(3, 2, 3, 42).matrix()).norm() == 0.0);
    CHECK((sample_k_separable(3, 2, 3, 42).matrix() - sample_k_separable(3, 2, 3, 43).matrix()).norm() > 0.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sample_k_separable(3, 4, 1, 0), InvalidArgument);
    CHECK_THROWS_AS(sample_k_separable(3, 0, 1, 0), InvalidArgument);
    CHECK_THROWS_AS(sample_k_separable(3, 2, 0, 0), InvalidArgument);
  }
}
