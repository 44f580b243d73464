#include "symp/pair/symmetric_pair.hpp"

#include <cmath>
#include <string>

#include "symp/core/linalg.hpp"

namespace symp::pair {

namespace {

void require_length(const Vector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    throw DomainError(std::string(what) + ": expected length " + std::to_string(n) +
                      ", got " + std::to_string(v.size()));
  }
}

Matrix pick(const Matrix& m, std::span<const Eigen::Index> rows,
            std::span<const Eigen::Index> cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(rows[r], cols[c]);
    }
  }
  return out;
}

void require_indices(std::span<const Eigen::Index> keep, Eigen::Index n, const char* what) {
  for (Eigen::Index k : keep) {
    if (k < 0 || k >= n) {
      throw DomainError(std::string("compress: ") + what + " index " + std::to_string(k) +
                        " out of range");
    }
  }
}

BlockL assemble(const Matrix& top_right, const Matrix& bottom_left, Linearity lin,
                Eigen::Index n1, Eigen::Index n2) {
  Matrix l = Matrix::Zero(n1 + n2, n1 + n2);
  l.topRightCorner(n1, n2) = top_right;
  l.bottomLeftCorner(n2, n1) = bottom_left;
  return {OperatorMatrix(std::move(l), lin), n1, n2};
}

std::vector<Vector> eigenvectors_of(const OperatorMatrix& lstar, cplx lambda, double tol) {
  return core::eig_space(lstar, lambda, tol);
}

}  // namespace

SymmetricPairSpec::SymmetricPairSpec(OperatorMatrix a, OperatorMatrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.linearity() != b_.linearity()) {
    throw DomainError("symmetric pair: A and B must share a linearity tag");
  }
  if (b_.rows() != a_.cols() || b_.cols() != a_.rows()) {
    throw DomainError("symmetric pair: A is " + std::to_string(a_.rows()) + "x" +
                      std::to_string(a_.cols()) + " so B must be " +
                      std::to_string(a_.cols()) + "x" + std::to_string(a_.rows()));
  }
}

SymmetricPairSpec SymmetricPairSpec::compress(std::span<const Eigen::Index> h1_keep,
                                              std::span<const Eigen::Index> h2_keep) const {
  require_indices(h1_keep, dim_h1(), "H1");
  require_indices(h2_keep, dim_h2(), "H2");
  return {OperatorMatrix(pick(a_.matrix(), h2_keep, h1_keep), linearity()),
          OperatorMatrix(pick(b_.matrix(), h1_keep, h2_keep), linearity())};
}

SymmetricPairSpec SymmetricPairSpec::realified() const {
  return {core::realify(a_), core::realify(b_)};
}

CheckResult check_pair(const SymmetricPairSpec& spec, double tol) {
  // <A e_j, e_i> = conj(A_ij) and <e_j, B e_i> = B_ji for either tag; the
  // conjugate-linear identity conjugates the right side.
  const Matrix& a = spec.a().matrix();
  const Matrix& b = spec.b().matrix();
  const Matrix diff = spec.linearity() == Linearity::Linear
                          ? Matrix(a.adjoint() - b)
                          : Matrix(a.adjoint() - b.conjugate());
  return CheckResult::make("pair_identity", core::max_abs(diff), tol);
}

BlockL build_L(const SymmetricPairSpec& spec) {
  return assemble(spec.b().matrix(), spec.a().matrix(), spec.linearity(), spec.dim_h1(),
                  spec.dim_h2());
}

BlockL build_Lstar(const SymmetricPairSpec& spec) {
  return assemble(spec.a_star().matrix(), spec.b_star().matrix(), spec.linearity(),
                  spec.dim_h1(), spec.dim_h2());
}

double symmetry_defect(const BlockL& l) {
  return core::max_abs_diff(l.l, core::adjoint(l.l));
}

DefectData adjoint_eigenspaces(const SymmetricPairSpec& spec, double tol) {
  DefectData out;
  out.realified = spec.linearity() == Linearity::ConjugateLinear;
  const SymmetricPairSpec work = out.realified ? spec.realified() : spec;
  const OperatorMatrix lstar = build_Lstar(work).l;
  out.def_plus = eigenvectors_of(lstar, kI, tol);
  out.def_minus = eigenvectors_of(lstar, -kI, tol);
  out.n_plus = out.def_plus.size();
  out.n_minus = out.def_minus.size();
  return out;
}

DefectData deficiency(const SymmetricPairSpec& spec, double tol) {
  const BlockL l = build_L(spec);
  const double defect = symmetry_defect(l);
  if (defect > tol * (1.0 + core::max_abs(l.l.matrix()))) {
    throw DomainError("deficiency: L is not symmetric (defect " + std::to_string(defect) +
                      ")");
  }
  DefectData out = adjoint_eigenspaces(spec, tol);
  if (out.n_plus != out.n_minus) {
    throw NumericalError("deficiency: computed indices differ (" +
                         std::to_string(out.n_plus) + ", " + std::to_string(out.n_minus) +
                         ")");
  }
  return out;
}

Vector defect_flip(const Vector& v, Eigen::Index dim_h1, Eigen::Index dim_h2) {
  require_length(v, dim_h1 + dim_h2, "defect_flip");
  Vector out = v;
  out.head(dim_h1) = -out.head(dim_h1);
  return out;
}

PsiResult psi_pm(const Vector& u, const SymmetricPairSpec& spec, Sign sign,
                 std::span<const Eigen::Index> check_rows) {
  require_length(u, spec.dim_h1(), "psi_pm");
  const double s = sign == Sign::Plus ? 1.0 : -1.0;
  const Eigen::Index n1 = spec.dim_h1();
  const Eigen::Index n2 = spec.dim_h2();
  const OperatorMatrix b_star = spec.b_star();
  const Vector bu = b_star.apply(u);

  PsiResult out;
  out.value.resize(n1 + n2);
  out.value.head(n1) = u;
  out.value.tail(n2) = (s * kI) * bu;
  out.eigenvalue = -s * kI;
  out.precondition_residual = (spec.a_star().apply(bu) + u).norm();

  const Vector r = build_Lstar(spec).l.apply(out.value) - out.eigenvalue * out.value;
  if (check_rows.empty()) {
    out.eigen_residual = r.norm();
  } else {
    double acc = 0.0;
    for (Eigen::Index k : check_rows) {
      if (k < 0 || k >= r.size()) throw DomainError("psi_pm: check row out of range");
      acc += std::norm(r(k));
    }
    out.eigen_residual = std::sqrt(acc);
  }
  return out;
}

Vector lq_apply(const SymmetricPairSpec& spec, const Vector& x, const Vector& y,
                const Vector& u, const Vector& v) {
  require_length(x, spec.dim_h1(), "lq_apply x");
  require_length(y, spec.dim_h2(), "lq_apply y");
  require_length(u, spec.dim_h1(), "lq_apply u");
  require_length(v, spec.dim_h1(), "lq_apply v");
  const OperatorMatrix b_star = spec.b_star();
  Vector out(spec.dim_h1() + spec.dim_h2());
  out.head(spec.dim_h1()) = spec.b().apply(y) + kI * u - kI * v;
  out.tail(spec.dim_h2()) = spec.a().apply(x) + b_star.apply(u) + b_star.apply(v);
  return out;
}

Vector lq_domain_vector(const SymmetricPairSpec& spec, const Vector& x, const Vector& y,
                        const Vector& u, const Vector& v) {
  require_length(x, spec.dim_h1(), "lq_domain_vector x");
  require_length(y, spec.dim_h2(), "lq_domain_vector y");
  require_length(u, spec.dim_h1(), "lq_domain_vector u");
  require_length(v, spec.dim_h1(), "lq_domain_vector v");
  const OperatorMatrix b_star = spec.b_star();
  Vector out(spec.dim_h1() + spec.dim_h2());
  out.head(spec.dim_h1()) = x + u + v;
  out.tail(spec.dim_h2()) = y - kI * b_star.apply(u) + kI * b_star.apply(v);
  return out;
}

double qtilde_isometry_check(const SymmetricPairSpec& spec, const Vector& u,
                             const Vector& qu) {
  require_length(u, spec.dim_h1(), "qtilde_isometry_check u");
  require_length(qu, spec.dim_h1(), "qtilde_isometry_check qu");
  const OperatorMatrix b_star = spec.b_star();
  const double lhs = u.squaredNorm() + b_star.apply(u).squaredNorm();
  const double rhs = qu.squaredNorm() + b_star.apply(qu).squaredNorm();
  return std::abs(lhs - rhs);
}

MaximalityReport is_maximal(const SymmetricPairSpec& spec, double tol) {
  MaximalityReport out;
  out.a_minus_b_star = core::max_abs_diff(spec.a(), spec.b_star());
  out.b_minus_a_star = core::max_abs_diff(spec.b(), spec.a_star());
  out.maximal = out.a_minus_b_star < tol;
  return out;
}

std::vector<Vector> defect_eig(const SymmetricPairSpec& spec, double tol) {
  const OperatorMatrix ab = core::compose(spec.a_star(), spec.b_star());
  return core::eig_space(ab, cplx(-1.0, 0.0), tol);
}

}  // namespace symp::pair
