#include "nbell/witness.hpp"

#include <cmath>
#include <string>

namespace nbell {

Real violation_factor(Real norm_squared, Real e_max, int n_qubits) {
  if (n_qubits < 1) throw InvalidArgument("violation_factor: qubit count must be positive");
  if (!(norm_squared >= 0.0) || !(e_max >= 0.0)) {
    throw InvalidArgument("violation_factor: norm and maximum must be non-negative");
  }
  if (e_max == 0.0) {
    if (norm_squared > 0.0) throw Error("violation_factor: vanishing E_max with non-zero norm");
    return 0.0;
  }
  return std::ldexp(norm_squared / e_max, -2 * n_qubits);
}

Real k_sep_threshold(int n_qubits, int k) {
  if (n_qubits < 1) throw InvalidArgument("k_sep_threshold: qubit count must be positive");
  if (k < 1 || k > n_qubits) {
    throw InvalidArgument("k_sep_threshold: k = " + std::to_string(k) + " outside 1.." + std::to_string(n_qubits));
  }
  return std::ldexp(std::pow(kPi / 2, n_qubits), -k);
}

Real max_possible_r(int n_qubits) { return k_sep_threshold(n_qubits, 1); }

std::optional<Real> critical_visibility(Real r) {
  if (r > 1.0) return 1.0 / r;
  return std::nullopt;
}

WitnessReport classify(const AntidiagonalProfile& profile) {
  WitnessReport report;
  report.n_qubits = profile.n_qubits;
  report.e_max = e_max(profile);
  report.norm_squared = norm_squared_antidiagonal(profile);
  report.r = violation_factor(report.norm_squared, report.e_max, profile.n_qubits);
  report.lhv_violated = report.r > 1.0;
  report.max_possible_r = max_possible_r(profile.n_qubits);
  for (int k = 2; k <= profile.n_qubits; ++k) {
    ThresholdVerdict verdict;
    verdict.k = k;
    verdict.r_k_max = k_sep_threshold(profile.n_qubits, k);
    verdict.excluded = report.r > verdict.r_k_max;
    verdict.margin = report.r - verdict.r_k_max;
    if (verdict.excluded && !report.min_excluded_separability) report.min_excluded_separability = k;
    report.thresholds.push_back(verdict);
  }
  report.critical_visibility = critical_visibility(report.r);
  return report;
}

WitnessReport classify(const State& state) { return classify(antidiagonal_profile(state)); }

}  // namespace nbell
