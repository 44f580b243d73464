#pragma once

#include <cstdint>
#include <vector>

#include "symp/core/check.hpp"
#include "symp/core/operator_matrix.hpp"

namespace symp::modular {

using core::CheckResult;
using core::OperatorMatrix;

/// The *-algebra generated by a list of m x m matrices (and the identity),
/// stored as a Hilbert-Schmidt orthonormal basis.
class AlgebraSpec {
 public:
  explicit AlgebraSpec(std::vector<Matrix> generators, double tol = kIdentityTol);
  /// Wraps a basis that is already a *-algebra, without closing it again.
  static AlgebraSpec from_basis(std::vector<Matrix> basis);

  Eigen::Index ambient_dim() const { return m_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }

  /// Largest Hilbert-Schmidt distance of a product or adjoint of basis
  /// elements from the span.
  double closure_residual() const;

 private:
  AlgebraSpec() = default;
  Eigen::Index m_ = 0;
  std::vector<Matrix> basis_;
};

/// Hilbert-Schmidt distance from y to span(basis), basis orthonormal.
double expansion_residual(const Matrix& y, const std::vector<Matrix>& basis);

/// Orthonormal basis of {x : x b = b x for every b in the algebra}.
AlgebraSpec commutant(const AlgebraSpec& alg, double tol = kIdentityTol);

/// Distance between span(alg) and its double commutant, measured both ways.
double double_commutant_residual(const AlgebraSpec& alg, double tol = kIdentityTol);

/// Hilbert-Schmidt space of n x n matrices, vectorized column-major, with
/// the algebra of left multiplications and xi = rho^{1/2}.
struct StandardForm {
  int n = 0;
  Matrix rho;
  Vector xi;
  AlgebraSpec alg;       // left multiplications h -> a h
  AlgebraSpec commutant; // right multiplications h -> h b
};

StandardForm standard_form(int n, const Matrix& rho, double tol = kIdentityTol);
Matrix tracial_density(int n);
/// G G* + eps I normalized to unit trace, G with uniform entries.
Matrix random_density(int n, std::uint64_t seed, double eps = 0.1);

/// Matrices of h -> a h and h -> h b on column-major vec(h).
Matrix left_multiplication(const Matrix& a);
Matrix right_multiplication(const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// rank{b xi} over the algebra basis.
Eigen::Index orbit_rank(const AlgebraSpec& alg, const Vector& xi, double tol = kIdentityTol);
/// Algebra orbit spans the ambient space.
bool cyclic_check(const AlgebraSpec& alg, const Vector& xi, double tol = kIdentityTol);
/// b -> b xi is injective on the algebra.
bool separating_check(const AlgebraSpec& alg, const Vector& xi, double tol = kIdentityTol);

/// Conjugate-linear v = m xi -> m* xi for m in the algebra.
struct Conjugation {
  OperatorMatrix op;
  double condition = 0.0;  // of the m -> m xi solve
};
Conjugation build_S(const AlgebraSpec& alg, const Vector& xi, double tol = kIdentityTol);
/// The same construction over the commutant.
Conjugation build_F(const AlgebraSpec& commutant, const Vector& xi, double tol = kIdentityTol);

/// Delta = (S* S)^{1/2}.
OperatorMatrix modular_delta(const OperatorMatrix& s, double tol = kIdentityTol);
/// J = S Delta^{-1}; conjugate-linear.
OperatorMatrix modular_J(const OperatorMatrix& s, const OperatorMatrix& delta,
                         double tol = kIdentityTol);

struct ModularData {
  Vector xi;
  OperatorMatrix s;
  OperatorMatrix f;
  OperatorMatrix delta;
  OperatorMatrix j;
  double s_condition = 0.0;
  double f_condition = 0.0;
};
ModularData modular_data(const AlgebraSpec& alg, const AlgebraSpec& comm, const Vector& xi,
                         double tol = kIdentityTol);

struct CommutationReport {
  double jmj_residual = 0.0;    // J x J expanded in the commutant
  double sxs_residual = 0.0;    // (S x S) y - y (S x S) for x, y in the algebra
  Eigen::Index jmj_rank = 0;    // dim span{J x J}
  Eigen::Index commutant_dim = 0;
};
CommutationReport check_commutation(const OperatorMatrix& j, const OperatorMatrix& s,
                                    const AlgebraSpec& alg, const AlgebraSpec& comm,
                                    double tol = kIdentityTol);

/// max over t and basis x of the distance of Delta^{it} x Delta^{-it} from the algebra.
double modular_flow_check(const OperatorMatrix& delta, const AlgebraSpec& alg,
                          const std::vector<double>& t_list, double tol = kIdentityTol);

struct MaximalityCheck {
  bool maximal = false;
  double f_star_minus_s = 0.0;
  CheckResult pair;
  /// Real dimension of {zeta : zeta (+) F* zeta orthogonal to the graph of S}.
  Eigen::Index graph_kernel_dim = 0;
  /// Real dimension of {zeta : F* zeta = -zeta} on its own.
  Eigen::Index eigen_kernel_dim = 0;
};
MaximalityCheck maximality_check(const OperatorMatrix& s, const OperatorMatrix& f,
                                 double tol = kIdentityTol);

}  // namespace symp::modular
