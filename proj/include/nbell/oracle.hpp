#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nbell/correlation.hpp"

namespace nbell {

inline constexpr int kMaxOracleQubits = 6;

struct GridSearchConfig {
  int points_per_axis = 64;
  int refinement_rounds = 3;
  Real refinement_shrink = 0.1;
  std::uint64_t max_evaluations = 10'000'000;

  void validate() const;
  /// Grid points visited for an N-qubit search: P^N per round.
  std::uint64_t evaluations_for(int n_qubits) const;
  /// Default config with points_per_axis lowered (not below 8) until it fits the budget.
  static GridSearchConfig for_qubits(int n_qubits);
};

struct GridMaximum {
  Real value = 0.0;
  AngleSetting setting;
  std::uint64_t evaluations = 0;
};

/// Brute-force maximum of E over the x-y planes: full periodic grid, then
/// `refinement_rounds` re-grids of a box shrunk around the incumbent. Ties go to
/// the lexicographically smallest setting, so the result is order independent.
GridMaximum maximize_grid(const AntidiagonalProfile& profile, const GridSearchConfig& config);
GridMaximum maximize_grid(const State& state, const GridSearchConfig& config);

/// Periodic trapezoid approximation of the integral of E^2 over [0, 2pi)^N.
/// E^2 has trigonometric degree 2 per axis, so 5 or more points are exact.
Real norm_squared_quadrature(const AntidiagonalProfile& profile, int points_per_axis,
                             std::uint64_t max_evaluations = 10'000'000);
Real norm_squared_quadrature(const State& state, int points_per_axis, std::uint64_t max_evaluations = 10'000'000);

/// Evidence that 2 sum|rho_k| is not attained. Whenever s_a + s_b = s_c + s_d for
/// the sign vectors of four antidiagonal phases, theta_a + theta_b = theta_c + theta_d
/// identically, so attaining every cosine peak needs Phi_a + Phi_b = Phi_c + Phi_d mod 2pi.
struct PhaseObstruction {
  bool certified = false;
  Real defect = 0.0;  // largest |Phi_a + Phi_b - Phi_c - Phi_d| mod 2pi found
};

PhaseObstruction phase_obstruction(const AntidiagonalProfile& profile, Real modulus_floor = 1e-9,
                                   Real defect_tolerance = 1e-6);

enum class CheckStatus { pass, fail, obstructed };

const char* to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  Real value = 0.0;
  Real tolerance = 0.0;
  CheckStatus status = CheckStatus::fail;
};

struct ValidationReport {
  int n_qubits = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

using CorrelationEvaluator = std::function<Real(const AntidiagonalProfile&, const AngleSetting&)>;

struct CrossValidationConfig {
  std::optional<GridSearchConfig> grid;  // GridSearchConfig::for_qubits(N) when unset
  int sampled_settings = 100;
  int quadrature_points = 8;
  std::uint64_t seed = 0;
  CorrelationEvaluator evaluator;  // correlation_value when unset
};

inline constexpr Real kTraceTolerance = 1e-12;
inline constexpr Real kNormRelativeTolerance = 1e-9;
inline constexpr Real kSoundnessTolerance = 1e-9;
inline constexpr Real kAttainabilityTolerance = 1e-5;

/// Runs every closed form against its brute-force counterpart:
///   trace_equivalence   evaluator vs. direct trace at sampled settings
///   dual_formula        antidiagonal norm vs. tensor norm (relative)
///   quadrature          antidiagonal norm vs. trapezoid integral (relative)
///   grid_soundness      grid maximum never above e_max
///   grid_attainability  e_max - grid maximum; `obstructed` when a phase
///                       obstruction proves the closed form is not attained
ValidationReport cross_validate(const State& state, const CrossValidationConfig& config = {});

}  // namespace nbell
