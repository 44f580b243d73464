#pragma once

#include <vector>

#include "symp/core/types.hpp"
#include "symp/malliavin/chaos.hpp"

namespace symp::malliavin {

struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;
};
using Polynomial = std::vector<Monomial>;

/// E[p(X_1, ..., X_n)] for a centred Gaussian vector with covariance G,
/// by Wick pairing: E[x_i x^a] = sum_j G_ij a_j E[x^{a - e_j}].
/// Total degree above kMaxMomentDegree is refused.
inline constexpr int kMaxMomentDegree = 20;
double gaussian_expectation(const Polynomial& p, const RealMatrix& gram);

/// Chaos coefficients of a polynomial in x_1..x_d (standard Gaussians).
Vector from_polynomial(const ChaosBasis& basis, const Polynomial& p);

/// Orthonormal frame for span{k, h_1, ..., h_n} given the Gramian of the h's
/// and the coefficients of k in that family. k comes first; vectors that are
/// dependent on earlier ones are dropped.
struct OrthonormalFrame {
  RealMatrix change;  // column m: coefficients of f_m in the h's
  RealMatrix coords;  // column j: coordinates of h_j in the frame
  std::vector<int> dropped;  // -1 stands for k, otherwise the h index
};
OrthonormalFrame gram_schmidt_reduce(const RealMatrix& gram, const RealVector& k,
                                     double tol = 1e-12);

}  // namespace symp::malliavin
