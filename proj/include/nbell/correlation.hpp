#pragma once

#include "nbell/kernels.hpp"
#include "nbell/states.hpp"

namespace nbell {

/// The 2^(N-1) antidiagonal elements rho_{0k; 1~k}, k = (k_2..k_N) packed with
/// k_2 as the most significant bit. Everything in the planar correlation
/// function depends on the state only through these numbers.
struct AntidiagonalProfile {
  int n_qubits = 0;
  VectorXc values;
};

/// Components T_{i_1..i_N}, i_j in {x, y}, packed big-endian with x = 0, y = 1.
struct CorrelationTensor {
  int n_qubits = 0;
  VectorXr components;
};

/// Local measurement angles in the x-y planes: sigma(a) = cos(a) sigma_x + sin(a) sigma_y.
struct AngleSetting {
  VectorXr angles;

  int n_qubits() const { return static_cast<int>(angles.size()); }
};

AntidiagonalProfile antidiagonal_profile(const PureState& state);
AntidiagonalProfile antidiagonal_profile(const DensityMatrix& state);
AntidiagonalProfile antidiagonal_profile(const State& state);

Real correlation_value(const AntidiagonalProfile& profile, const AngleSetting& setting);
Real correlation_value(const State& state, const AngleSetting& setting);

/// Tr[rho sigma(a_1) x ... x sigma(a_N)] applied factor by factor with explicit
/// Pauli matrices. Reference path for cross-checking the antidiagonal form.
Real correlation_value_trace(const State& state, const AngleSetting& setting);

/// Corner evaluations: a_j = 0 for x, pi/2 for y.
CorrelationTensor correlation_tensor(const AntidiagonalProfile& profile);
CorrelationTensor correlation_tensor(const State& state);

/// E(a) = sum_i T_i prod_j f_{i_j}(a_j) with f_x = cos, f_y = sin.
Real correlation_from_tensor(const CorrelationTensor& tensor, const AngleSetting& setting);

/// 2 sum_k |rho_k|.
Real e_max(const AntidiagonalProfile& profile);

/// Maximizer for two qubits from the antidiagonal arguments Phi_00 and Phi_01:
/// a_1 = -(Phi_00 + Phi_01)/2, a_2 = -(Phi_00 - Phi_01)/2, wrapped to (-pi, pi].
AngleSetting optimal_angles_two_qubit(const AntidiagonalProfile& profile);

/// 2 (2 pi)^N sum_k |rho_k|^2.
Real norm_squared_antidiagonal(const AntidiagonalProfile& profile);

/// pi^N sum_i T_i^2.
Real norm_squared_tensor(const CorrelationTensor& tensor);

/// Wraps an angle into (-pi, pi].
Real wrap_angle(Real angle);

}  // namespace nbell
