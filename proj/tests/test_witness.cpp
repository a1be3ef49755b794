#include "doctest.h"

#include <cmath>

#include "nbell/correlation.hpp"
#include "nbell/oracle.hpp"
#include "nbell/witness.hpp"
#include "oracles.hpp"

using namespace nbell;

namespace {

Real ghz_r(int n) { return 0.5 * std::pow(kPi / 2, n); }

PureState plus_x_bell() {
  const Real h = 1.0 / std::sqrt(2.0);
  return PureState::from_amplitudes(oracle::kron(oracle::vec({h, h}), oracle::vec({h, 0.0, 0.0, h})));
}

}  // namespace

TEST_CASE("violation_factor") {
  CHECK(classify(State(make_ghz(2))).r == doctest::Approx(kPi * kPi / 8).epsilon(1e-12));
  CHECK(classify(State(make_ghz(2))).r == doctest::Approx(1.2337).epsilon(1e-4));
  CHECK(classify(State(make_ghz(3))).r == doctest::Approx(1.9379).epsilon(1e-4));
  CHECK(classify(State(DensityMatrix::maximally_mixed(3))).r == 0.0);
  CHECK(violation_factor(0.0, 0.0, 3) == 0.0);
  CHECK_THROWS_AS(violation_factor(1.0, 0.0, 3), Error);
  CHECK_THROWS_AS(violation_factor(-1.0, 1.0, 3), InvalidArgument);
}

TEST_CASE("k_sep_threshold") {
  CHECK(k_sep_threshold(2, 2) == doctest::Approx(kPi * kPi / 16));
  CHECK(k_sep_threshold(2, 2) == doctest::Approx(0.6169).epsilon(1e-4));
  CHECK(k_sep_threshold(3, 2) == doctest::Approx(0.9689).epsilon(1e-4));
  CHECK(k_sep_threshold(4, 4) == doctest::Approx(0.3805).epsilon(1e-4));
  CHECK(k_sep_threshold(4, 4) == doctest::Approx(std::pow(kPi / 4, 4)));
  CHECK(k_sep_threshold(5, 1) == max_possible_r(5));
  for (int n = 1; n <= 10; ++n) {
    for (int k = 1; k < n; ++k) CHECK(k_sep_threshold(n, k) / k_sep_threshold(n, k + 1) == 2.0);
  }
  CHECK_THROWS_AS(k_sep_threshold(3, 0), InvalidArgument);
  CHECK_THROWS_AS(k_sep_threshold(3, 4), InvalidArgument);
}

TEST_CASE("classify examples") {
  SUBCASE("GHZ3") {
    const WitnessReport report = classify(State(make_ghz(3)));
    CHECK(report.r == doctest::Approx(std::pow(kPi, 3) / 16).epsilon(1e-12));
    CHECK(report.lhv_violated);
    REQUIRE(report.thresholds.size() == 2);
    CHECK(report.thresholds[0].k == 2);
    CHECK(report.thresholds[0].excluded);
    CHECK(report.min_excluded_separability == 2);
    REQUIRE(report.critical_visibility);
    CHECK(*report.critical_visibility == doctest::Approx(16 / std::pow(kPi, 3)));
  }
  SUBCASE("|+x> (x) Bell sits on the biseparable boundary") {
    const WitnessReport report = classify(State(plus_x_bell()));
    CHECK(std::abs(report.r - std::pow(kPi, 3) / 32) <= 1e-9);
    CHECK_FALSE(report.thresholds[0].excluded);
    CHECK(report.thresholds[1].excluded);
    CHECK(report.min_excluded_separability == 3);
    CHECK_FALSE(report.lhv_violated);
    CHECK_FALSE(report.critical_visibility);
  }
  SUBCASE("GHZ3 at V = 0.4") {
    const WitnessReport report = classify(State(add_white_noise(DensityMatrix::from_pure(make_ghz(3)), 0.4)));
    CHECK(report.r == doctest::Approx(0.775).epsilon(1e-3));
    CHECK_FALSE(report.lhv_violated);
    CHECK_FALSE(report.thresholds[0].excluded);
    CHECK(report.thresholds[1].excluded);
    CHECK(report.min_excluded_separability == 3);
  }
  SUBCASE("no planar correlations") {
    const WitnessReport report = classify(State(basis_state("00")));
    CHECK(report.r == 0.0);
    CHECK_FALSE(report.min_excluded_separability);
    CHECK(report.thresholds.size() == 1);
  }
  SUBCASE("single qubit has no ladder") {
    const WitnessReport report = classify(State(make_ghz(1)));
    CHECK(report.thresholds.empty());
    CHECK(report.r == doctest::Approx(kPi / 4));
  }
}

TEST_CASE("critical_visibility") {
  CHECK(*critical_visibility(std::pow(kPi, 3) / 16) == doctest::Approx(0.5160).epsilon(1e-4));
  CHECK_FALSE(critical_visibility(1.0));
  CHECK(*critical_visibility(2.0) == 0.5);
}

TEST_CASE("GHZ saturation") {
  for (int n = 1; n <= 10; ++n) CHECK(std::abs(classify(State(make_ghz(n))).r / ghz_r(n) - 1) <= 1e-9);
  for (int n = 1; n <= 5; ++n) {
    const auto profile = antidiagonal_profile(make_ghz(n));
    const Real r = violation_factor(norm_squared_quadrature(profile, 8), e_max(profile), n);
    CHECK(std::abs(r / ghz_r(n) - 1) <= 1e-9);
  }
}

TEST_CASE("white noise scales r linearly") {
  Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 5;
    const DensityMatrix rho = random_density_matrix(n, 1, rng);
    const Real v = 0.05 + 0.03 * trial;
    CHECK(std::abs(classify(State(add_white_noise(rho, v))).r - v * classify(State(rho)).r) <= 1e-9);
  }
}

TEST_CASE("random states never exceed the GHZ value") {
  Rng rng(1000);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      const State state = trial % 2 == 0 ? State(random_pure_state(n, rng)) : State(random_density_matrix(n, 2, rng));
      const WitnessReport report = classify(state);
      CHECK(report.r >= 0.0);
      CHECK(report.r <= max_possible_r(n) + 1e-9);
    }
  }
}

TEST_CASE("sampled k-separable states stay below their threshold") {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= n; ++k) {
      Real worst = -1.0;
      for (std::uint64_t seed = 0; seed < 500; ++seed) {
        worst = std::max(worst, classify(State(sample_k_separable(n, k, 1 + seed % 3, seed))).r - k_sep_threshold(n, k));
      }
      CHECK(worst <= 1e-9);
    }
  }
}
