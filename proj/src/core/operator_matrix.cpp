#include "symp/core/operator_matrix.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace symp::core {

std::string_view to_string(Linearity lin) {
  return lin == Linearity::Linear ? "linear" : "conjugate";
}

Linearity linearity_from_string(std::string_view s) {
  if (s == "linear") return Linearity::Linear;
  if (s == "conjugate") return Linearity::ConjugateLinear;
  throw DomainError("unknown linearity tag '" + std::string(s) +
                    "' (expected \"linear\" or \"conjugate\")");
}

OperatorMatrix::OperatorMatrix(Matrix m, Linearity lin)
    : m_(std::move(m)), lin_(lin) {
  if (!m_.allFinite()) throw DomainError("operator matrix has non-finite entries");
}

OperatorMatrix OperatorMatrix::identity(Eigen::Index n) {
  return OperatorMatrix(Matrix::Identity(n, n));
}

OperatorMatrix OperatorMatrix::zero(Eigen::Index rows, Eigen::Index cols,
                                    Linearity lin) {
  return OperatorMatrix(Matrix::Zero(rows, cols), lin);
}

Vector OperatorMatrix::apply(const Vector& v) const {
  if (v.size() != cols()) {
    throw DomainError("apply: vector length " + std::to_string(v.size()) +
                      " does not match operator columns " +
                      std::to_string(cols()));
  }
  if (is_linear()) return m_ * v;
  return m_ * v.conjugate();
}

OperatorMatrix compose(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DomainError("compose: inner dimensions differ (" +
                      std::to_string(lhs.cols()) + " vs " +
                      std::to_string(rhs.rows()) + ")");
  }
  // lhs(rhs v): a conjugate-linear lhs conjugates whatever rhs produced.
  Matrix m = lhs.is_linear() ? Matrix(lhs.matrix() * rhs.matrix())
                             : Matrix(lhs.matrix() * rhs.matrix().conjugate());
  const bool conj = lhs.is_linear() != rhs.is_linear();
  return OperatorMatrix(std::move(m),
                        conj ? Linearity::ConjugateLinear : Linearity::Linear);
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  return compose(lhs, rhs);
}

namespace {

void require_same_shape(const OperatorMatrix& a, const OperatorMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError(std::string(what) + ": shape mismatch");
  }
  if (a.linearity() != b.linearity()) {
    throw DomainError(std::string(what) + ": linearity tags differ");
  }
}

}  // namespace

OperatorMatrix operator+(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same_shape(lhs, rhs, "operator+");
  return OperatorMatrix(lhs.matrix() + rhs.matrix(), lhs.linearity());
}

OperatorMatrix operator-(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same_shape(lhs, rhs, "operator-");
  return OperatorMatrix(lhs.matrix() - rhs.matrix(), lhs.linearity());
}

OperatorMatrix operator*(cplx c, const OperatorMatrix& t) {
  return OperatorMatrix(c * t.matrix(), t.linearity());
}

OperatorMatrix adjoint(const OperatorMatrix& t) {
  if (t.is_linear()) return OperatorMatrix(t.matrix().adjoint(), t.linearity());
  return OperatorMatrix(t.matrix().transpose(), t.linearity());
}

double adjoint_identity_residual(const OperatorMatrix& t,
                                 const OperatorMatrix& t_star) {
  if (t_star.rows() != t.cols() || t_star.cols() != t.rows()) {
    throw DomainError("adjoint_identity_residual: shape mismatch");
  }
  const Eigen::Index n = t.cols();
  const Eigen::Index m = t.rows();

  // Probe set: e_j, i*e_j and three fixed dense vectors per side.
  auto probes = [](Eigen::Index dim) {
    std::vector<Vector> out;
    for (Eigen::Index j = 0; j < dim; ++j) {
      Vector e = Vector::Zero(dim);
      e(j) = 1.0;
      out.push_back(e);
      out.push_back(kI * e);
    }
    for (int p = 1; p <= 3; ++p) {
      Vector v(dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double a = static_cast<double>((7 * p + 3 * j) % 11) - 5.0;
        const double b = static_cast<double>((5 * p + 2 * j) % 7) - 3.0;
        v(j) = cplx(a, b);
      }
      out.push_back(v);
    }
    return out;
  };

  const auto us = probes(n);
  const auto vs = probes(m);
  double worst = 0.0;
  for (const auto& u : us) {
    const Vector tu = t.apply(u);
    for (const auto& v : vs) {
      const cplx lhs = inner(tu, v);
      cplx rhs = inner(u, t_star.apply(v));
      if (!t.is_linear()) rhs = std::conj(rhs);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

OperatorMatrix realify(const OperatorMatrix& t) {
  const RealMatrix p = t.matrix().real();
  const RealMatrix q = t.matrix().imag();
  const Eigen::Index r = t.rows();
  const Eigen::Index c = t.cols();
  RealMatrix out(2 * r, 2 * c);
  if (t.is_linear()) {
    // (P + iQ)(x + iy) = (Px - Qy) + i(Qx + Py)
    out << p, -q, q, p;
  } else {
    // (P + iQ)(x - iy) = (Px + Qy) + i(Qx - Py)
    out << p, q, q, -p;
  }
  return OperatorMatrix(out.cast<cplx>());
}

Vector realify(const Vector& v) {
  Vector out(2 * v.size());
  out << v.real().cast<cplx>(), v.imag().cast<cplx>();
  return out;
}

Vector complexify(const Vector& v) {
  if (v.size() % 2 != 0) throw DomainError("complexify: odd length");
  const Eigen::Index n = v.size() / 2;
  Vector out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out(j) = cplx(v(j).real(), v(n + j).real());
  }
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  return max_abs(a.matrix() - b.matrix());
}

}  // namespace symp::core
