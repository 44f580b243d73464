#include "symp/core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace symp::core {

namespace {

void require_square_linear(const OperatorMatrix& h, const char* what) {
  if (h.rows() != h.cols()) {
    throw DomainError(std::string(what) + ": operator is not square");
  }
  if (!h.is_linear()) {
    throw DomainError(std::string(what) + ": operator must be linear");
  }
}

void require_self_adjoint(const OperatorMatrix& h, double tol, const char* what) {
  require_square_linear(h, what);
  const double defect = self_adjoint_defect(h);
  const double scale = 1.0 + max_abs(h.matrix());
  if (defect > tol * scale) {
    throw DomainError(std::string(what) + ": operator is not self-adjoint (defect " +
                      std::to_string(defect) + ")");
  }
}

void normalize_phase(Eigen::Ref<Vector> v) {
  const double cutoff = 1e-8 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = cplx(v(i).real(), 0.0);
      return;
    }
  }
}

}  // namespace

double self_adjoint_defect(const OperatorMatrix& h) {
  return max_abs(h.matrix() - adjoint(h).matrix());
}

PolarDecomposition polar_decompose(const OperatorMatrix& t, double tol) {
  if (!t.is_linear()) throw DomainError("polar_decompose: operator must be linear");
  Eigen::BDCSVD<Matrix> svd(t.matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("polar_decompose: SVD did not converge");
  }
  const RealVector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol * smax) ++rank;

  const Matrix& u = svd.matrixU();
  const Matrix& w = svd.matrixV();
  Matrix p = w * s.cast<cplx>().asDiagonal() * w.adjoint();
  p = 0.5 * (p + p.adjoint()).eval();
  Matrix v = u.leftCols(rank) * w.leftCols(rank).adjoint();

  OperatorMatrix vop(v);
  OperatorMatrix p1(v.adjoint() * v);
  OperatorMatrix p2(v * v.adjoint());
  return {PartialIsometry{std::move(vop), std::move(p1), std::move(p2)},
          OperatorMatrix(std::move(p))};
}

Eigensystem eigensystem(const OperatorMatrix& h, double tol) {
  require_self_adjoint(h, tol, "eigensystem");
  const Matrix herm = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensystem: eigensolver did not converge");
  }
  Eigensystem out;
  out.values.assign(es.eigenvalues().data(),
                    es.eigenvalues().data() + es.eigenvalues().size());
  out.vectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    normalize_phase(out.vectors.col(j));
  }
  return out;
}

std::vector<double> spectrum(const OperatorMatrix& h, double tol) {
  return eigensystem(h, tol).values;
}

OperatorMatrix sqrt_psd(const OperatorMatrix& p, double tol) {
  const Eigensystem es = eigensystem(p, tol);
  const double scale =
      std::max(1.0, es.values.empty() ? 0.0
                                      : std::max(std::abs(es.values.front()),
                                                 std::abs(es.values.back())));
  RealVector root(static_cast<Eigen::Index>(es.values.size()));
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    double lam = es.values[j];
    if (lam < -tol * scale) {
      throw DomainError("sqrt_psd: eigenvalue " + std::to_string(lam) +
                        " is negative beyond tolerance");
    }
    root(static_cast<Eigen::Index>(j)) = std::sqrt(std::max(lam, 0.0));
  }
  Matrix q = es.vectors * root.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  return OperatorMatrix(0.5 * (q + q.adjoint()));
}

OperatorMatrix cayley(const OperatorMatrix& t, double tol) {
  require_square_linear(t, "cayley");
  const Eigen::Index n = t.rows();
  const Matrix id = Matrix::Identity(n, n);
  Eigen::PartialPivLU<Matrix> lu(kI * id + t.matrix());
  if (n > 0 && !(lu.rcond() > tol)) {
    throw NumericalError(
        "cayley: (i + T) is numerically singular; T is not symmetric");
  }
  // (i - T) and (i + T)^{-1} commute, so solve from the right-hand form.
  return OperatorMatrix(lu.solve(kI * id - t.matrix()));
}

OperatorMatrix unitary_power(const OperatorMatrix& h, double t, double tol) {
  const Eigensystem es = eigensystem(h, tol);
  Vector phases(static_cast<Eigen::Index>(es.values.size()));
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    const double lam = es.values[j];
    if (!(lam > tol)) {
      throw DomainError("unitary_power: eigenvalue " + std::to_string(lam) +
                        " is not positive");
    }
    phases(static_cast<Eigen::Index>(j)) = std::exp(kI * (t * std::log(lam)));
  }
  return OperatorMatrix(es.vectors * phases.asDiagonal() * es.vectors.adjoint());
}

std::vector<Vector> canonical_basis(const Matrix& q) {
  const Eigen::Index n = q.rows();
  const Eigen::Index k = q.cols();
  const Matrix proj = q * q.adjoint();
  std::vector<Vector> basis;
  std::vector<Vector> residuals;
  residuals.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) residuals.emplace_back(proj.col(j));

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index step = 0; step < k; ++step) {
    double best = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!used[static_cast<std::size_t>(j)]) {
        best = std::max(best, residuals[static_cast<std::size_t>(j)].norm());
      }
    }
    if (best <= 0.0) break;
    Eigen::Index pick = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!used[static_cast<std::size_t>(j)] &&
          residuals[static_cast<std::size_t>(j)].norm() >= best * (1.0 - 1e-9)) {
        pick = j;
        break;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    Vector v = residuals[static_cast<std::size_t>(pick)];
    // Second Gram-Schmidt pass for orthogonality, then re-project.
    for (const auto& b : basis) v -= inner(b, v) * b;
    v = proj * v;
    v.normalize();
    normalize_phase(v);
    for (Eigen::Index j = 0; j < n; ++j) {
      auto& r = residuals[static_cast<std::size_t>(j)];
      r -= inner(v, r) * v;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> null_space(const OperatorMatrix& t, double tol) {
  if (!t.is_linear()) throw DomainError("null_space: operator must be linear");
  const Eigen::Index n = t.cols();
  if (n == 0) return {};
  if (t.rows() == 0) return canonical_basis(Matrix::Identity(n, n));

  Eigen::BDCSVD<Matrix> svd(t.matrix(), Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("null_space: SVD did not converge");
  }
  const RealVector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  std::vector<Eigen::Index> kernel_cols;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j >= s.size() || s(j) <= tol * smax) kernel_cols.push_back(j);
  }
  if (kernel_cols.empty()) return {};
  Matrix q(n, static_cast<Eigen::Index>(kernel_cols.size()));
  for (std::size_t c = 0; c < kernel_cols.size(); ++c) {
    q.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(kernel_cols[c]);
  }
  return canonical_basis(q);
}

std::vector<Vector> eig_space(const OperatorMatrix& t, cplx lambda, double tol) {
  require_square_linear(t, "eig_space");
  const Eigen::Index n = t.rows();
  return null_space(OperatorMatrix(t.matrix() - lambda * Matrix::Identity(n, n)),
                    tol);
}

Eigen::Index numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double smax = s(0);
  if (smax == 0.0) return 0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol * smax) ++r;
  return r;
}

Matrix as_columns(const std::vector<Vector>& vs, Eigen::Index dim) {
  Matrix out(dim, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].size() != dim) throw DomainError("as_columns: length mismatch");
    out.col(static_cast<Eigen::Index>(j)) = vs[j];
  }
  return out;
}

double distance_to_span(const Vector& v, const std::vector<Vector>& basis) {
  Vector r = v;
  for (const auto& b : basis) r -= inner(b, r) * b;
  return r.norm();
}

}  // namespace symp::core
