#pragma once

#include <cmath>
#include <string>

namespace symp::core {

/// Outcome of a residual check. pass <=> residual is finite and <= tol.
struct CheckResult {
  std::string check;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;

  static CheckResult make(std::string name, double residual, double tol) {
    return {std::move(name), residual, tol, std::isfinite(residual) && residual <= tol};
  }
};

}  // namespace symp::core
