#include "symp/malliavin/chaos.hpp"

#include <cmath>
#include <string>

namespace symp::malliavin {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

double multi_factorial(const MultiIndex& a) {
  double w = 1.0;
  for (int ai : a) w *= factorial(ai);
  return w;
}

// Compositions of `n` into the slots [slot, d), first slot largest first.
void compositions(int n, std::size_t slot, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (slot + 1 == cur.size()) {
    cur[slot] = n;
    out.push_back(cur);
    return;
  }
  for (int v = n; v >= 0; --v) {
    cur[slot] = v;
    compositions(n - v, slot + 1, cur, out);
  }
  cur[slot] = 0;
}

void require_slot(const ChaosBasis& basis, int i) {
  if (i < 0 || i >= basis.d()) {
    throw DomainError("slot " + std::to_string(i) + " out of range for d = " +
                      std::to_string(basis.d()));
  }
}

void require_vector(const ChaosBasis& basis, const Vector& f) {
  if (f.size() != basis.size()) {
    throw DomainError("chaos vector has length " + std::to_string(f.size()) +
                      ", basis has " + std::to_string(basis.size()));
  }
}

void require_direction(const ChaosBasis& basis, const RealVector& k) {
  if (k.size() != basis.d()) {
    throw DomainError("direction k must have " + std::to_string(basis.d()) + " components");
  }
}

// Accumulates coefficients, sending anything above the truncation degree
// into a side table so its norm can be reported.
class Accumulator {
 public:
  explicit Accumulator(const ChaosBasis& basis)
      : basis_(basis), value_(Vector::Zero(basis.size())) {}

  void add(const MultiIndex& alpha, cplx c) {
    const Eigen::Index p = basis_.find(alpha);
    if (p >= 0) {
      value_(p) += c;
    } else {
      overflow_[alpha] += c;
    }
  }

  Truncated finish() {
    double loss_sq = 0.0;
    for (const auto& [alpha, c] : overflow_) loss_sq += std::norm(c) * multi_factorial(alpha);
    return {std::move(value_), std::sqrt(loss_sq)};
  }

 private:
  const ChaosBasis& basis_;
  Vector value_;
  std::map<MultiIndex, cplx> overflow_;
};

}  // namespace

ChaosBasis::ChaosBasis(int d, int max_degree) : d_(d), max_degree_(max_degree) {
  if (d < 1) throw DomainError("chaos basis needs d >= 1");
  if (max_degree < 0) throw DomainError("chaos basis needs N >= 0");
  // C(N + d, d) computed incrementally in floating point.
  double count = 1.0;
  for (int j = 1; j <= d; ++j) count = count * (max_degree + j) / j;
  if (count > kMaxSize) {
    throw DomainError("chaos basis of size C(N+d, d) = " + std::to_string(count) +
                      " exceeds the limit of 1e6");
  }
  MultiIndex cur(static_cast<std::size_t>(d), 0);
  for (int n = 0; n <= max_degree; ++n) {
    std::vector<MultiIndex> level;
    compositions(n, 0, cur, level);
    for (auto& a : level) {
      degrees_.push_back(n);
      indices_.push_back(std::move(a));
    }
  }
  weights_.resize(size());
  for (Eigen::Index k = 0; k < size(); ++k) {
    weights_(k) = multi_factorial(index(k));
    lookup_.emplace(index(k), k);
  }
}

Eigen::Index ChaosBasis::find(const MultiIndex& alpha) const {
  const auto it = lookup_.find(alpha);
  return it == lookup_.end() ? -1 : it->second;
}

Eigen::Index ChaosBasis::position(const MultiIndex& alpha) const {
  const Eigen::Index p = find(alpha);
  if (p < 0) throw DomainError("multi-index is not in the chaos basis");
  return p;
}

std::vector<Eigen::Index> ChaosBasis::up_to_degree(int k) const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < size(); ++j) {
    if (degree(j) <= k) out.push_back(j);
  }
  return out;
}

Vector ChaosBasis::unit(const MultiIndex& alpha) const {
  Vector v = Vector::Zero(size());
  v(position(alpha)) = 1.0;
  return v;
}

cplx ChaosBasis::inner(const Vector& f, const Vector& g) const {
  require_vector(*this, f);
  require_vector(*this, g);
  return f.dot(weights_.cast<cplx>().asDiagonal() * g);
}

double ChaosBasis::norm(const Vector& f) const { return std::sqrt(inner(f, f).real()); }

Truncated mult_phi(const ChaosBasis& basis, int i, const Vector& f) {
  require_slot(basis, i);
  require_vector(basis, f);
  Accumulator acc(basis);
  const auto slot = static_cast<std::size_t>(i);
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    if (f(j) == cplx(0.0)) continue;
    MultiIndex a = basis.index(j);
    const int ai = a[slot];
    a[slot] = ai + 1;
    acc.add(a, f(j));
    if (ai > 0) {
      a[slot] = ai - 1;
      acc.add(a, static_cast<double>(ai) * f(j));
    }
  }
  return acc.finish();
}

ChaosField T_apply(const ChaosBasis& basis, const Vector& f) {
  require_vector(basis, f);
  ChaosField out(static_cast<std::size_t>(basis.d()), Vector::Zero(basis.size()));
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    if (f(j) == cplx(0.0)) continue;
    for (int i = 0; i < basis.d(); ++i) {
      MultiIndex a = basis.index(j);
      const int ai = a[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      a[static_cast<std::size_t>(i)] = ai - 1;
      out[static_cast<std::size_t>(i)](basis.position(a)) += static_cast<double>(ai) * f(j);
    }
  }
  return out;
}

Vector Tk_apply(const ChaosBasis& basis, const Vector& f, const RealVector& k) {
  require_direction(basis, k);
  const ChaosField tf = T_apply(basis, f);
  Vector out = Vector::Zero(basis.size());
  for (int i = 0; i < basis.d(); ++i) out += k(i) * tf[static_cast<std::size_t>(i)];
  return out;
}

Truncated S_apply(const ChaosBasis& basis, const Vector& g, const RealVector& k) {
  require_direction(basis, k);
  require_vector(basis, g);
  // x_i H_alpha - alpha_i H_{alpha - e_i} = H_{alpha + e_i}.
  Accumulator acc(basis);
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    if (g(j) == cplx(0.0)) continue;
    for (int i = 0; i < basis.d(); ++i) {
      if (k(i) == 0.0) continue;
      MultiIndex a = basis.index(j);
      a[static_cast<std::size_t>(i)] += 1;
      acc.add(a, k(i) * g(j));
    }
  }
  return acc.finish();
}

Vector number_operator(const ChaosBasis& basis, const Vector& f) {
  require_vector(basis, f);
  const Matrix t = T_matrix(basis);
  const Matrix t_star = weighted_adjoint(t, field_weights(basis), basis.weights());
  return t_star * (t * f);
}

Truncated product(const ChaosBasis& basis, const Vector& f, const Vector& g) {
  require_vector(basis, f);
  require_vector(basis, g);
  Vector total = Vector::Zero(basis.size());
  double loss = 0.0;
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    if (f(j) == cplx(0.0)) continue;
    // H_alpha * g by running the three-term recurrence slot by slot.
    Vector y = g;
    const MultiIndex& a = basis.index(j);
    for (int i = 0; i < basis.d(); ++i) {
      const int n = a[static_cast<std::size_t>(i)];
      if (n == 0) continue;
      Vector prev = y;
      Truncated step = mult_phi(basis, i, y);
      loss += step.loss;
      Vector cur = std::move(step.value);
      for (int m = 1; m < n; ++m) {
        Truncated nxt = mult_phi(basis, i, cur);
        loss += nxt.loss;
        Vector next = nxt.value - static_cast<double>(m) * prev;
        prev = std::move(cur);
        cur = std::move(next);
      }
      y = std::move(cur);
    }
    total += f(j) * y;
  }
  return {std::move(total), loss};
}

ExpVector exp_vector(const ChaosBasis& basis, const RealVector& k, double tail_tol) {
  require_direction(basis, k);
  ExpVector out;
  out.coeffs.resize(basis.size());
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    double c = 1.0;
    const MultiIndex& a = basis.index(j);
    for (int i = 0; i < basis.d(); ++i) {
      const int ai = a[static_cast<std::size_t>(i)];
      c *= std::pow(k(i), ai) / factorial(ai);
    }
    out.coeffs(j) = c;
  }
  // Squared norm of level n is |k|^{2n}/n!; sum the terms past N.
  const double s = k.squaredNorm();
  double term = 1.0;
  for (int n = 1; n <= basis.max_degree(); ++n) term *= s / n;
  double tail = 0.0;
  for (int n = basis.max_degree() + 1; n < basis.max_degree() + 400; ++n) {
    term *= s / n;
    tail += term;
    if (term < 1e-300 || term < 1e-17 * tail) break;
  }
  out.tail = tail;
  out.tail_ok = tail < tail_tol;
  return out;
}

Matrix mult_matrix(const ChaosBasis& basis, int i) {
  require_slot(basis, i);
  Matrix m = Matrix::Zero(basis.size(), basis.size());
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    Vector e = Vector::Zero(basis.size());
    e(j) = 1.0;
    m.col(j) = mult_phi(basis, i, e).value;
  }
  return m;
}

Matrix derivative_matrix(const ChaosBasis& basis, int i) {
  require_slot(basis, i);
  Matrix m = Matrix::Zero(basis.size(), basis.size());
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    MultiIndex a = basis.index(j);
    const int ai = a[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    a[static_cast<std::size_t>(i)] = ai - 1;
    m(basis.position(a), j) = static_cast<double>(ai);
  }
  return m;
}

Matrix T_matrix(const ChaosBasis& basis) {
  const Eigen::Index n = basis.size();
  Matrix t(basis.d() * n, n);
  for (int i = 0; i < basis.d(); ++i) t.middleRows(i * n, n) = derivative_matrix(basis, i);
  return t;
}

Matrix S_matrix(const ChaosBasis& basis) {
  const Eigen::Index n = basis.size();
  Matrix s(n, basis.d() * n);
  for (int i = 0; i < basis.d(); ++i) {
    RealVector k = RealVector::Zero(basis.d());
    k(i) = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      Vector e = Vector::Zero(n);
      e(j) = 1.0;
      s.col(i * n + j) = S_apply(basis, e, k).value;
    }
  }
  return s;
}

RealVector field_weights(const ChaosBasis& basis) {
  return basis.weights().replicate(basis.d(), 1);
}

Matrix weighted_adjoint(const Matrix& m, const RealVector& w_out, const RealVector& w_in) {
  if (w_out.size() != m.rows() || w_in.size() != m.cols()) {
    throw DomainError("weighted_adjoint: weight lengths do not match the matrix");
  }
  return w_in.cwiseInverse().cast<cplx>().asDiagonal() * m.adjoint() *
         w_out.cast<cplx>().asDiagonal();
}

Matrix to_orthonormal(const Matrix& m, const RealVector& w_out, const RealVector& w_in) {
  if (w_out.size() != m.rows() || w_in.size() != m.cols()) {
    throw DomainError("to_orthonormal: weight lengths do not match the matrix");
  }
  return w_out.cwiseSqrt().cast<cplx>().asDiagonal() * m *
         w_in.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal();
}

pair::SymmetricPairSpec ts_pair(const ChaosBasis& basis) {
  const RealVector w1 = basis.weights();
  const RealVector w2 = field_weights(basis);
  return {core::OperatorMatrix(to_orthonormal(T_matrix(basis), w2, w1)),
          core::OperatorMatrix(to_orthonormal(S_matrix(basis), w1, w2))};
}

pair::SymmetricPairSpec hermite_pair(int max_degree) { return ts_pair(ChaosBasis(1, max_degree)); }

}  // namespace symp::malliavin
