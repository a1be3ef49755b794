#pragma once

// Expression-level kernels over Eigen vectors and matrices. Everything here is
// templated on the Eigen expression type so callers can pass blocks, maps or
// lazily evaluated products without materializing temporaries.

#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace nbell::kernels {

template <typename Derived>
using ComplexVectorOf =
    Eigen::Matrix<std::complex<typename Eigen::NumTraits<typename Derived::Scalar>::Real>,
                  Eigen::Dynamic, 1>;

/// Number of qubits addressed by a vector or matrix of side `size` (a power of two).
inline int qubits_for_dimension(Eigen::Index size) {
  int n = 0;
  while ((Eigen::Index{1} << n) < size) ++n;
  return n;
}

/// Antidiagonal elements rho(k, ~k) for the 2^(N-1) rows whose first qubit is 0.
template <typename Derived>
ComplexVectorOf<Derived> antidiagonal_of_density(const Eigen::MatrixBase<Derived>& rho) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index mask = dim - 1;
  ComplexVectorOf<Derived> out(dim / 2);
  for (Eigen::Index k = 0; k < dim / 2; ++k) out(k) = rho(k, mask ^ k);
  return out;
}

/// Same quantity for |psi><psi| without forming the outer product: psi(k) * conj(psi(~k)).
template <typename Derived>
ComplexVectorOf<Derived> antidiagonal_of_pure(const Eigen::MatrixBase<Derived>& psi) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index mask = dim - 1;
  ComplexVectorOf<Derived> out(dim / 2);
  for (Eigen::Index k = 0; k < dim / 2; ++k) out(k) = psi(k) * std::conj(psi(mask ^ k));
  return out;
}

/// Phase theta_k = a_1 + sum_j (-1)^{k_j} a_j of the k-th antidiagonal term.
template <typename Derived>
typename Derived::Scalar antidiagonal_phase(std::uint64_t k, const Eigen::MatrixBase<Derived>& angles) {
  const int n = static_cast<int>(angles.size());
  typename Derived::Scalar theta = angles(0);
  for (int j = 1; j < n; ++j) {
    const bool flipped = (k >> (n - 1 - j)) & 1u;
    theta += flipped ? -angles(j) : angles(j);
  }
  return theta;
}

/// Planar correlation E(a) = 2 sum_k Re(rho_k e^{i theta_k}).
template <typename ProfileDerived, typename AngleDerived>
typename AngleDerived::Scalar planar_correlation(const Eigen::MatrixBase<ProfileDerived>& profile,
                                                 const Eigen::MatrixBase<AngleDerived>& angles) {
  using Scalar = typename AngleDerived::Scalar;
  Scalar sum(0);
  for (Eigen::Index k = 0; k < profile.size(); ++k) {
    const Scalar theta = antidiagonal_phase(static_cast<std::uint64_t>(k), angles);
    const auto rho = profile(k);
    sum += std::cos(theta) * rho.real() - std::sin(theta) * rho.imag();
  }
  return Scalar(2) * sum;
}

/// Closed-form supremum bound 2 sum_k |rho_k|.
template <typename Derived>
auto twice_modulus_sum(const Eigen::MatrixBase<Derived>& profile) {
  return 2 * profile.cwiseAbs().sum();
}

}  // namespace nbell::kernels
