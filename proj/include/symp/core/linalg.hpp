#pragma once

#include <vector>

#include "symp/core/operator_matrix.hpp"

namespace symp::core {

struct PartialIsometry {
  OperatorMatrix matrix;
  OperatorMatrix initial_projection;  // V*V, onto (ker T)^perp
  OperatorMatrix final_projection;    // VV*, onto closure of ran T
};

struct PolarDecomposition {
  PartialIsometry v;
  OperatorMatrix p;  // (T*T)^{1/2}
};

struct Eigensystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // orthonormal columns, same order as values
};

/// max |H - H*| entrywise.
double self_adjoint_defect(const OperatorMatrix& h);

/// T = V P with P = (T*T)^{1/2}. Singular values at or below
/// tol * sigma_max are treated as zero when forming V.
PolarDecomposition polar_decompose(const OperatorMatrix& t,
                                   double tol = kIdentityTol);

/// Eigen-decomposition of a self-adjoint Linear operator. Each eigenvector is
/// phase-normalized so that its first non-negligible component is real and
/// positive.
Eigensystem eigensystem(const OperatorMatrix& h, double tol = kIdentityTol);
std::vector<double> spectrum(const OperatorMatrix& h, double tol = kIdentityTol);

/// Positive square root. Eigenvalues in [-tol * max(1, |H|), 0] are clamped
/// to zero; anything more negative is rejected.
OperatorMatrix sqrt_psd(const OperatorMatrix& p, double tol = kIdentityTol);

/// C(T) = (i - T)(i + T)^{-1} for symmetric T.
OperatorMatrix cayley(const OperatorMatrix& t, double tol = kIdentityTol);

/// H^{it} = U diag(lambda^{it}) U* for positive definite H.
OperatorMatrix unitary_power(const OperatorMatrix& h, double t,
                             double tol = kIdentityTol);

/// Orthonormal basis of {v : |Tv| <= tol |T| |v|} via singular-value
/// thresholding. The basis is canonical: it depends only on the subspace.
std::vector<Vector> null_space(const OperatorMatrix& t, double tol = kIdentityTol);

/// null_space(T - lambda I).
std::vector<Vector> eig_space(const OperatorMatrix& t, cplx lambda,
                              double tol = kIdentityTol);

/// Canonical orthonormal basis for the column span of `q`, whose columns must
/// be orthonormal. Columns of the projector are Gram-Schmidt reduced with
/// largest-residual pivoting (ties go to the lowest coordinate index).
std::vector<Vector> canonical_basis(const Matrix& q);

/// Number of singular values above tol * sigma_max.
Eigen::Index numerical_rank(const Matrix& m, double tol = kIdentityTol);

/// Stack vectors as columns.
Matrix as_columns(const std::vector<Vector>& vs, Eigen::Index dim);

/// Distance from v to span(basis) where basis is orthonormal.
double distance_to_span(const Vector& v, const std::vector<Vector>& basis);

}  // namespace symp::core
