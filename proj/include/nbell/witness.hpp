#pragma once

#include <optional>
#include <vector>

#include "nbell/correlation.hpp"

namespace nbell {

struct ThresholdVerdict {
  int k = 0;
  Real r_k_max = 0.0;
  bool excluded = false;  // r > r_k_max, strictly
  Real margin = 0.0;      // r - r_k_max
};

/// Outcome of the rotationally invariant Bell test for one state.
///
/// `thresholds` covers k = 2..N. A verdict only ever says that k-separability is
/// excluded or not excluded; the witness is sufficient, not necessary.
struct WitnessReport {
  int n_qubits = 0;
  Real e_max = 0.0;
  Real norm_squared = 0.0;
  Real r = 0.0;
  bool lhv_violated = false;
  Real max_possible_r = 0.0;
  std::vector<ThresholdVerdict> thresholds;
  std::optional<int> min_excluded_separability;
  std::optional<Real> critical_visibility;
};

/// r = 4^-N ||E||^2 / E_max, with r = 0 when E_max = 0.
Real violation_factor(Real norm_squared, Real e_max, int n_qubits);

/// Largest r attainable by a k-separable state: 2^-k (pi/2)^N.
Real k_sep_threshold(int n_qubits, int k);

/// Largest r of any state, 1/2 (pi/2)^N (attained by GHZ).
Real max_possible_r(int n_qubits);

/// 1/r when r > 1; below this visibility white noise removes the violation.
std::optional<Real> critical_visibility(Real r);

WitnessReport classify(const AntidiagonalProfile& profile);
WitnessReport classify(const State& state);

}  // namespace nbell
