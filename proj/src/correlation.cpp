#include "nbell/correlation.hpp"

#include <cmath>
#include <string>

namespace nbell {

namespace {

void check_setting(int n_qubits, const AngleSetting& setting) {
  if (setting.n_qubits() != n_qubits) {
    throw InvalidArgument("angle setting has " + std::to_string(setting.n_qubits()) + " angles for " +
                          std::to_string(n_qubits) + " qubits");
  }
  if (!setting.angles.allFinite()) throw InvalidArgument("angle setting has a non-finite entry");
}

Eigen::Matrix2cd planar_observable(Real angle) {
  Eigen::Matrix2cd sigma_x;
  Eigen::Matrix2cd sigma_y;
  sigma_x << 0.0, 1.0, 1.0, 0.0;
  sigma_y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return std::cos(angle) * sigma_x + std::sin(angle) * sigma_y;
}

// Left-multiplies the rows of `m` by the single-qubit operator `gate` acting on `qubit`.
template <typename Derived>
void apply_on_rows(Eigen::MatrixBase<Derived>& m, const Eigen::Matrix2cd& gate, int qubit, int n_qubits) {
  const Eigen::Index stride = Eigen::Index{1} << (n_qubits - qubit);
  for (Eigen::Index base = 0; base < m.rows(); base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index i0 = base + off;
      const Eigen::Index i1 = i0 + stride;
      const auto r0 = m.row(i0).eval();
      const auto r1 = m.row(i1).eval();
      m.row(i0) = gate(0, 0) * r0 + gate(0, 1) * r1;
      m.row(i1) = gate(1, 0) * r0 + gate(1, 1) * r1;
    }
  }
}

}  // namespace

AntidiagonalProfile antidiagonal_profile(const PureState& state) {
  return {state.n_qubits(), kernels::antidiagonal_of_pure(state.amplitudes())};
}

AntidiagonalProfile antidiagonal_profile(const DensityMatrix& state) {
  return {state.n_qubits(), kernels::antidiagonal_of_density(state.matrix())};
}

AntidiagonalProfile antidiagonal_profile(const State& state) {
  return std::visit([](const auto& s) { return antidiagonal_profile(s); }, state);
}

Real correlation_value(const AntidiagonalProfile& profile, const AngleSetting& setting) {
  check_setting(profile.n_qubits, setting);
  return kernels::planar_correlation(profile.values, setting.angles);
}

Real correlation_value(const State& state, const AngleSetting& setting) {
  return correlation_value(antidiagonal_profile(state), setting);
}

Real correlation_value_trace(const State& state, const AngleSetting& setting) {
  const int n = n_qubits(state);
  check_setting(n, setting);
  if (const auto* pure = std::get_if<PureState>(&state)) {
    VectorXc phi = pure->amplitudes();
    for (int q = 1; q <= n; ++q) apply_on_rows(phi, planar_observable(setting.angles(q - 1)), q, n);
    return pure->amplitudes().dot(phi).real();
  }
  const auto& rho = std::get<DensityMatrix>(state);
  if (n > kMaxDenseQubits) throw InvalidArgument("correlation_value_trace: state too large for dense evaluation");
  MatrixXc product = rho.matrix();
  for (int q = 1; q <= n; ++q) apply_on_rows(product, planar_observable(setting.angles(q - 1)), q, n);
  return product.trace().real();
}

CorrelationTensor correlation_tensor(const AntidiagonalProfile& profile) {
  const int n = profile.n_qubits;
  const auto size = dimension(n);
  CorrelationTensor tensor{n, VectorXr(static_cast<Eigen::Index>(size))};
  AngleSetting corner{VectorXr(n)};
  for (std::uint64_t index = 0; index < size; ++index) {
    for (int q = 1; q <= n; ++q) corner.angles(q - 1) = bit_of(index, q, n) ? kPi / 2 : 0.0;
    tensor.components(static_cast<Eigen::Index>(index)) = correlation_value(profile, corner);
  }
  return tensor;
}

CorrelationTensor correlation_tensor(const State& state) { return correlation_tensor(antidiagonal_profile(state)); }

Real correlation_from_tensor(const CorrelationTensor& tensor, const AngleSetting& setting) {
  const int n = tensor.n_qubits;
  check_setting(n, setting);
  Real sum = 0.0;
  for (Eigen::Index index = 0; index < tensor.components.size(); ++index) {
    Real term = tensor.components(index);
    for (int q = 1; q <= n; ++q) {
      const Real a = setting.angles(q - 1);
      term *= bit_of(static_cast<std::uint64_t>(index), q, n) ? std::sin(a) : std::cos(a);
    }
    sum += term;
  }
  return sum;
}

Real e_max(const AntidiagonalProfile& profile) { return kernels::twice_modulus_sum(profile.values); }

AngleSetting optimal_angles_two_qubit(const AntidiagonalProfile& profile) {
  if (profile.n_qubits != 2) throw InvalidArgument("optimal_angles_two_qubit: requires exactly two qubits");
  if (profile.values.cwiseAbs().maxCoeff() == 0.0) {
    throw InvalidArgument("optimal_angles_two_qubit: all antidiagonal elements vanish, no maximizer is distinguished");
  }
  // std::arg(0) = 0, which fixes the phase of a vanishing element.
  const Real phi_even = std::arg(profile.values(0));
  const Real phi_odd = std::arg(profile.values(1));
  AngleSetting setting{VectorXr(2)};
  setting.angles << wrap_angle(-(phi_even + phi_odd) / 2), wrap_angle(-(phi_even - phi_odd) / 2);
  return setting;
}

Real norm_squared_antidiagonal(const AntidiagonalProfile& profile) {
  return 2.0 * std::pow(kTwoPi, profile.n_qubits) * profile.values.squaredNorm();
}

Real norm_squared_tensor(const CorrelationTensor& tensor) {
  return std::pow(kPi, tensor.n_qubits) * tensor.components.squaredNorm();
}

Real wrap_angle(Real angle) {
  Real wrapped = std::remainder(angle, kTwoPi);
  if (wrapped <= -kPi) wrapped += kTwoPi;
  return wrapped;
}

}  // namespace nbell
