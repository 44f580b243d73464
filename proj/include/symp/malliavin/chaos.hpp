#pragma once

#include <map>
#include <vector>

#include "symp/core/operator_matrix.hpp"
#include "symp/pair/symmetric_pair.hpp"

namespace symp::malliavin {

using MultiIndex = std::vector<int>;

/// Hermite products H_alpha = prod_i H_{alpha_i}(x_i) in d independent
/// standard Gaussian variables, total degree <= N. Probabilists' Hermite
/// polynomials, so <H_alpha, H_beta> = alpha! delta_{alpha beta}.
///
/// Ordering: by total degree, then descending lexicographic, so the degree-1
/// block reads e_1, e_2, ..., e_d.
class ChaosBasis {
 public:
  static constexpr double kMaxSize = 1e6;

  ChaosBasis(int d, int max_degree);

  int d() const { return d_; }
  int max_degree() const { return max_degree_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(indices_.size()); }

  const MultiIndex& index(Eigen::Index k) const { return indices_[static_cast<std::size_t>(k)]; }
  int degree(Eigen::Index k) const { return degrees_[static_cast<std::size_t>(k)]; }
  double norm_sq(Eigen::Index k) const { return weights_(k); }
  const RealVector& weights() const { return weights_; }

  /// Position of alpha, or -1 if it is not in the basis.
  Eigen::Index find(const MultiIndex& alpha) const;
  Eigen::Index position(const MultiIndex& alpha) const;  // throws when absent

  /// Positions of all indices with total degree <= k.
  std::vector<Eigen::Index> up_to_degree(int k) const;

  /// Coefficient vector of H_alpha.
  Vector unit(const MultiIndex& alpha) const;

  /// L2(Gaussian) inner product of two coefficient vectors.
  cplx inner(const Vector& f, const Vector& g) const;
  double norm(const Vector& f) const;

 private:
  int d_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::vector<int> degrees_;
  RealVector weights_;
  std::map<MultiIndex, Eigen::Index> lookup_;
};

/// d components, the i-th one along e_i.
using ChaosField = std::vector<Vector>;

/// Result of an operation that can push mass above the truncation degree.
/// `loss` is the L2 norm of the discarded part.
struct Truncated {
  Vector value;
  double loss = 0.0;
};

/// Phi(e_i) * F via x H_n = H_{n+1} + n H_{n-1} in slot i.
Truncated mult_phi(const ChaosBasis& basis, int i, const Vector& f);

/// Component i: H_alpha -> alpha_i H_{alpha - e_i}.
ChaosField T_apply(const ChaosBasis& basis, const Vector& f);

/// <T(F), k>.
Vector Tk_apply(const ChaosBasis& basis, const Vector& f, const RealVector& k);

/// S(G (x) k) = G Phi(k) - <T(G), k>.
Truncated S_apply(const ChaosBasis& basis, const Vector& g, const RealVector& k);

/// T* T F computed from the matrix of T and its adjoint in the weighted
/// inner products.
Vector number_operator(const ChaosBasis& basis, const Vector& f);

/// Product of two chaos vectors, built by iterating mult_phi.
Truncated product(const ChaosBasis& basis, const Vector& f, const Vector& g);

/// Coefficients of exp(Phi(k) - |k|^2/2): prod_i k_i^alpha_i / alpha_i!.
struct ExpVector {
  Vector coeffs;
  double tail = 0.0;  // sum_{n > N} |k|^{2n} / n!, the squared norm left out
  bool tail_ok = true;
};
ExpVector exp_vector(const ChaosBasis& basis, const RealVector& k,
                     double tail_tol = 1e-9);

/// Operator matrices on coefficient vectors.
Matrix mult_matrix(const ChaosBasis& basis, int i);
Matrix derivative_matrix(const ChaosBasis& basis, int i);
/// Stacked d*n x n matrix of T; block i is derivative_matrix(i).
Matrix T_matrix(const ChaosBasis& basis);
/// n x d*n matrix of G (x) e_i -> S(G (x) e_i), truncated at degree N.
Matrix S_matrix(const ChaosBasis& basis);
/// Weights of the field space: alpha! repeated d times.
RealVector field_weights(const ChaosBasis& basis);

/// Adjoint of M : (C^n, w_in) -> (C^m, w_out) for diagonal weights.
Matrix weighted_adjoint(const Matrix& m, const RealVector& w_out, const RealVector& w_in);
/// The same map written in orthonormal coordinates.
Matrix to_orthonormal(const Matrix& m, const RealVector& w_out, const RealVector& w_in);

/// (T, S) sections in orthonormal coordinates, H1 = chaos, H2 = chaos^d.
pair::SymmetricPairSpec ts_pair(const ChaosBasis& basis);

/// The one-variable case: A = d/dx, B = -d/dx + x on L2(N(0,1)), degree <= N.
pair::SymmetricPairSpec hermite_pair(int max_degree);

}  // namespace symp::malliavin
