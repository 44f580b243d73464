#pragma once

#include <span>
#include <vector>

#include "symp/core/check.hpp"
#include "symp/core/operator_matrix.hpp"

namespace symp::pair {

using core::CheckResult;
using core::Linearity;
using core::OperatorMatrix;

/// Sections A: H1 -> H2 and B: H2 -> H1 of a candidate symmetric pair, in
/// orthonormal coordinates on both spaces.
class SymmetricPairSpec {
 public:
  SymmetricPairSpec(OperatorMatrix a, OperatorMatrix b);

  const OperatorMatrix& a() const { return a_; }
  const OperatorMatrix& b() const { return b_; }
  OperatorMatrix a_star() const { return core::adjoint(a_); }
  OperatorMatrix b_star() const { return core::adjoint(b_); }
  Linearity linearity() const { return a_.linearity(); }
  Eigen::Index dim_h1() const { return a_.cols(); }
  Eigen::Index dim_h2() const { return a_.rows(); }

  /// Compression P2 A P1, P1 B P2 onto the listed coordinates.
  SymmetricPairSpec compress(std::span<const Eigen::Index> h1_keep,
                             std::span<const Eigen::Index> h2_keep) const;

  /// Swap roles: (B, A).
  SymmetricPairSpec swapped() const { return {b_, a_}; }

  /// Real-linear version on realified spaces; always Linear.
  SymmetricPairSpec realified() const;

 private:
  OperatorMatrix a_;
  OperatorMatrix b_;
};

/// L = [0 B; A 0] on K = H1 (+) H2.
struct BlockL {
  OperatorMatrix l;
  Eigen::Index dim_h1 = 0;
  Eigen::Index dim_h2 = 0;
};

struct DefectData {
  std::vector<Vector> def_plus;   // Eig_{+i}(L*)
  std::vector<Vector> def_minus;  // Eig_{-i}(L*)
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  bool realified = false;  // computed on the realified pair
};

enum class Sign { Plus, Minus };

struct PsiResult {
  Vector value;                        // u (+) (+-i B* u)
  cplx eigenvalue;                     // the L* eigenvalue the output carries
  double precondition_residual = 0.0;  // |A*B*u + u|
  double eigen_residual = 0.0;         // |L* out - eigenvalue out| on checked rows
};

struct MaximalityReport {
  bool maximal = false;
  double a_minus_b_star = 0.0;
  double b_minus_a_star = 0.0;
};

/// max over basis pairs of |<A phi, psi> - <phi, B psi>| (linear) or
/// |<A phi, psi> - conj(<phi, B psi>)| (conjugate-linear).
CheckResult check_pair(const SymmetricPairSpec& spec, double tol = kIdentityTol);

BlockL build_L(const SymmetricPairSpec& spec);
/// [0 A*; B* 0]
BlockL build_Lstar(const SymmetricPairSpec& spec);

/// max |L - L*| entrywise.
double symmetry_defect(const BlockL& l);

/// Eig_{+-i}(L*) with no symmetry precondition on L. Conjugate-linear pairs
/// are realified first.
DefectData adjoint_eigenspaces(const SymmetricPairSpec& spec,
                               double tol = kIdentityTol);

/// Deficiency spaces of a symmetric L. Throws DomainError when L is not
/// symmetric within tol, NumericalError when the computed indices differ.
DefectData deficiency(const SymmetricPairSpec& spec, double tol = kIdentityTol);

/// u (+) w  ->  (-u) (+) w
Vector defect_flip(const Vector& v, Eigen::Index dim_h1, Eigen::Index dim_h2);

/// u (+) (+-i B* u). Written this way the output lies in Eig_{-+i}(L*)
/// whenever A*B*u = -u; `eigenvalue` is set accordingly. When `check_rows`
/// is non-empty only those coordinates of K enter eigen_residual.
PsiResult psi_pm(const Vector& u, const SymmetricPairSpec& spec, Sign sign,
                 std::span<const Eigen::Index> check_rows = {});

/// (By + iu - iv) (+) (Ax + B*u + B*v), where v stands for Q~u.
Vector lq_apply(const SymmetricPairSpec& spec, const Vector& x, const Vector& y,
                const Vector& u, const Vector& v);

/// Domain element (x + u + v) (+) (y - iB*u + iB*v) on which L* acts as
/// lq_apply when A*B*u = -u and A*B*v = -v.
Vector lq_domain_vector(const SymmetricPairSpec& spec, const Vector& x, const Vector& y,
                        const Vector& u, const Vector& v);

/// |(|u|^2 + |B*u|^2) - (|qu|^2 + |B*qu|^2)|
double qtilde_isometry_check(const SymmetricPairSpec& spec, const Vector& u,
                             const Vector& qu);

/// Finite-section maximality: A = B* (equivalently B = A*).
MaximalityReport is_maximal(const SymmetricPairSpec& spec, double tol = kIdentityTol);

/// Eig_{-1}(A*B*). Empty on exact finite sections of a symmetric pair.
std::vector<Vector> defect_eig(const SymmetricPairSpec& spec, double tol = kIdentityTol);

}  // namespace symp::pair
