#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nbell {

using Real = double;
using Complex = std::complex<double>;

using VectorXr = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kTwoPi = 2.0 * kPi;

// Tolerances shared by the validation paths.
inline constexpr Real kNormTolerance = 1e-10;
inline constexpr Real kHermitianTolerance = 1e-10;
inline constexpr Real kPsdTolerance = 1e-8;

// Dense density matrices hold 4^N complex entries; pure states 2^N.
inline constexpr int kMaxDenseQubits = 13;
inline constexpr int kMaxPureQubits = 26;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A state, partition or argument violated a stated invariant.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// An oracle would exceed its configured evaluation budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// Basis index helpers. Qubit 1 is the most significant bit.
inline constexpr std::uint64_t dimension(int n_qubits) { return std::uint64_t{1} << n_qubits; }

inline constexpr int bit_of(std::uint64_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - qubit)) & 1u);
}

}  // namespace nbell
