#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace symp {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Default relative tolerance for identity checks.
inline constexpr double kIdentityTol = 1e-10;
/// Default tolerance for eigenvalue comparisons.
inline constexpr double kEigenTol = 1e-9;

/// Input violates a precondition (shape, finiteness, positivity...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a trustworthy answer
/// (singular system, internal consistency check failed).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symp
