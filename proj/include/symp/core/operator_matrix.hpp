#pragma once

#include <string_view>

#include "symp/core/types.hpp"

namespace symp::core {

enum class Linearity { Linear, ConjugateLinear };

std::string_view to_string(Linearity lin);
Linearity linearity_from_string(std::string_view s);

/// Dense operator between finite coordinate spaces.
///
/// A Linear operator acts as v -> M v; a ConjugateLinear operator acts as
/// v -> M conj(v). Entries are required to be finite.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(Matrix m, Linearity lin = Linearity::Linear);

  static OperatorMatrix identity(Eigen::Index n);
  static OperatorMatrix zero(Eigen::Index rows, Eigen::Index cols,
                             Linearity lin = Linearity::Linear);

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  const Matrix& matrix() const { return m_; }
  Linearity linearity() const { return lin_; }
  bool is_linear() const { return lin_ == Linearity::Linear; }

  Vector apply(const Vector& v) const;
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  Matrix m_;
  Linearity lin_ = Linearity::Linear;
};

/// (lhs o rhs). Conjugate-linearity composes like a sign:
/// conj o conj is linear, everything else mixed is conjugate-linear.
OperatorMatrix compose(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
OperatorMatrix operator+(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
OperatorMatrix operator-(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
/// Scalar post-multiplication: (c T)(v) = c * T(v).
OperatorMatrix operator*(cplx c, const OperatorMatrix& t);

/// Hilbert-space adjoint with the standard inner product (conjugate-linear in
/// the first slot). Linear: M^H. Conjugate-linear: M^T, which is the unique
/// operator with <Tu, v> = conj(<u, T* v>).
OperatorMatrix adjoint(const OperatorMatrix& t);

/// Standard inner product, conjugate-linear in the first argument.
inline cplx inner(const Vector& a, const Vector& b) { return a.dot(b); }

/// Largest |<Tu, v> - <u, T* v>| (linear) or |<Tu, v> - conj(<u, T* v>)|
/// (conjugate-linear) over all standard basis pairs, the basis vectors
/// multiplied by i, and a small fixed set of dense probes.
double adjoint_identity_residual(const OperatorMatrix& t,
                                 const OperatorMatrix& t_star);

/// Real-linear representation on R^{2n} with coordinates [Re v; Im v].
/// The result is Linear and has zero imaginary parts.
OperatorMatrix realify(const OperatorMatrix& t);
Vector realify(const Vector& v);
/// Inverse of realify(Vector).
Vector complexify(const Vector& v);

double max_abs(const Matrix& m);
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace symp::core
