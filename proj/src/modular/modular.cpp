#include "symp/modular/modular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symp/core/linalg.hpp"
#include "symp/core/random.hpp"
#include "symp/pair/symmetric_pair.hpp"

namespace symp::modular {

namespace {

cplx hs_inner(const Matrix& a, const Matrix& b) { return (a.array().conjugate() * b.array()).sum(); }

// Adds y to an orthonormal list when it is independent enough.
bool try_extend(std::vector<Matrix>& basis, Matrix y, double tol) {
  const double scale = y.norm();
  if (!(scale > 0.0)) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) y -= hs_inner(b, y) * b;
  }
  const double rest = y.norm();
  if (rest <= std::sqrt(tol) * scale) return false;
  basis.push_back(y / rest);
  return true;
}

Matrix orbit_matrix(const std::vector<Matrix>& basis, const Vector& xi) {
  Matrix out(xi.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = basis[k] * xi;
  }
  return out;
}

void require_vector(const AlgebraSpec& alg, const Vector& xi) {
  if (xi.size() != alg.ambient_dim()) {
    throw DomainError("vector length " + std::to_string(xi.size()) +
                      " does not match the ambient dimension " +
                      std::to_string(alg.ambient_dim()));
  }
}

Conjugation build_conjugation(const AlgebraSpec& alg, const Vector& xi, double tol,
                              const char* what) {
  require_vector(alg, xi);
  if (alg.dim() != alg.ambient_dim()) {
    throw DomainError(std::string(what) + ": the algebra has dimension " +
                      std::to_string(alg.dim()) + " but the space has dimension " +
                      std::to_string(alg.ambient_dim()) +
                      "; xi cannot be both cyclic and separating");
  }
  const Matrix orbit = orbit_matrix(alg.basis(), xi);
  Eigen::BDCSVD<Matrix> svd(orbit);
  const RealVector& sv = svd.singularValues();
  if (sv.size() == 0) return {OperatorMatrix(Matrix(0, 0), core::Linearity::ConjugateLinear), 1.0};
  if (!(sv(sv.size() - 1) > tol * sv(0))) {
    throw DomainError(std::string(what) +
                      ": xi is not cyclic and separating (m xi = 0 has a nonzero solution)");
  }
  const double condition = sv(0) / sv(sv.size() - 1);
  std::vector<Matrix> adj;
  adj.reserve(alg.basis().size());
  for (const auto& b : alg.basis()) adj.push_back(b.adjoint());
  const Matrix adj_orbit = orbit_matrix(adj, xi);
  // v = sum_k c_k b_k xi with c = orbit^{-1} v, so m* xi = adj_orbit conj(c).
  const Matrix inv = Eigen::PartialPivLU<Matrix>(orbit).inverse();
  return {OperatorMatrix(adj_orbit * inv.conjugate(), core::Linearity::ConjugateLinear),
          condition};
}

}  // namespace

AlgebraSpec::AlgebraSpec(std::vector<Matrix> generators, double tol) {
  if (generators.empty()) throw DomainError("algebra needs at least one generator");
  m_ = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != m_ || g.cols() != m_) {
      throw DomainError("all generators must be " + std::to_string(m_) + "x" +
                        std::to_string(m_));
    }
    if (!g.allFinite()) throw DomainError("generator has non-finite entries");
  }
  try_extend(basis_, Matrix::Identity(m_, m_), tol);
  for (const auto& g : generators) {
    try_extend(basis_, g, tol);
    try_extend(basis_, g.adjoint(), tol);
  }
  // Close under products until nothing new appears.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = basis_.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (try_extend(basis_, basis_[a] * basis_[b], tol)) grew = true;
      }
    }
  }
}

AlgebraSpec AlgebraSpec::from_basis(std::vector<Matrix> basis) {
  if (basis.empty()) throw DomainError("algebra basis must not be empty");
  AlgebraSpec out;
  out.m_ = basis.front().rows();
  out.basis_ = std::move(basis);
  return out;
}

double AlgebraSpec::closure_residual() const {
  double worst = 0.0;
  for (const auto& a : basis_) {
    worst = std::max(worst, expansion_residual(a.adjoint(), basis_));
    for (const auto& b : basis_) worst = std::max(worst, expansion_residual(a * b, basis_));
  }
  return worst;
}

double expansion_residual(const Matrix& y, const std::vector<Matrix>& basis) {
  Matrix r = y;
  for (const auto& b : basis) r -= hs_inner(b, y) * b;
  return r.norm();
}

AlgebraSpec commutant(const AlgebraSpec& alg, double tol) {
  const Eigen::Index m = alg.ambient_dim();
  const Eigen::Index mm = m * m;
  const Matrix id = Matrix::Identity(m, m);
  Matrix system(alg.dim() * mm, mm);
  Eigen::Index row = 0;
  for (const auto& b : alg.basis()) {
    // vec(x b - b x) = (b^T (x) I - I (x) b) vec(x)
    system.middleRows(row, mm) = kron(b.transpose(), id) - kron(id, b);
    row += mm;
  }
  const auto kernel = core::null_space(OperatorMatrix(system), tol);
  std::vector<Matrix> basis;
  basis.reserve(kernel.size());
  for (const auto& v : kernel) basis.push_back(Eigen::Map<const Matrix>(v.data(), m, m));
  return AlgebraSpec::from_basis(std::move(basis));
}

double double_commutant_residual(const AlgebraSpec& alg, double tol) {
  const AlgebraSpec cc = commutant(commutant(alg, tol), tol);
  double worst = 0.0;
  for (const auto& x : alg.basis()) worst = std::max(worst, expansion_residual(x, cc.basis()));
  for (const auto& y : cc.basis()) worst = std::max(worst, expansion_residual(y, alg.basis()));
  return worst;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix left_multiplication(const Matrix& a) {
  return kron(Matrix::Identity(a.rows(), a.rows()), a);
}

Matrix right_multiplication(const Matrix& b) {
  return kron(b.transpose(), Matrix::Identity(b.rows(), b.rows()));
}

Matrix tracial_density(int n) {
  if (n < 1) throw DomainError("density matrix dimension must be positive");
  return Matrix::Identity(n, n) / static_cast<double>(n);
}

Matrix random_density(int n, std::uint64_t seed, double eps) {
  if (n < 1) throw DomainError("density matrix dimension must be positive");
  core::SeededRng rng(seed);
  Matrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) g(r, c) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  Matrix rho = g * g.adjoint() + eps * Matrix::Identity(n, n);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return rho / rho.trace().real();
}

StandardForm standard_form(int n, const Matrix& rho, double tol) {
  if (n < 1) throw DomainError("standard form needs n >= 1");
  if (rho.rows() != n || rho.cols() != n) {
    throw DomainError("rho must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  const OperatorMatrix r(rho);
  if (core::self_adjoint_defect(r) > tol * (1.0 + core::max_abs(rho))) {
    throw DomainError("rho must be self-adjoint");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw DomainError("rho must have unit trace");
  const auto lam = core::spectrum(r, tol);
  if (!(lam.front() > tol)) {
    throw DomainError(
        "rho is singular, so xi = rho^{1/2} is not separating: m xi = 0 has a nonzero solution m");
  }
  StandardForm out{n, rho, Vector(), AlgebraSpec({Matrix::Identity(1, 1)}),
                   AlgebraSpec({Matrix::Identity(1, 1)})};
  const Matrix root = core::sqrt_psd(r, tol).matrix();
  out.xi = Eigen::Map<const Vector>(root.data(), n * n);
  std::vector<Matrix> left;
  std::vector<Matrix> right;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      left.push_back(left_multiplication(e));
      right.push_back(right_multiplication(e));
    }
  }
  out.alg = AlgebraSpec(std::move(left), tol);
  out.commutant = AlgebraSpec(std::move(right), tol);
  return out;
}

Eigen::Index orbit_rank(const AlgebraSpec& alg, const Vector& xi, double tol) {
  require_vector(alg, xi);
  return core::numerical_rank(orbit_matrix(alg.basis(), xi), tol);
}

bool cyclic_check(const AlgebraSpec& alg, const Vector& xi, double tol) {
  return orbit_rank(alg, xi, tol) == alg.ambient_dim();
}

bool separating_check(const AlgebraSpec& alg, const Vector& xi, double tol) {
  return orbit_rank(alg, xi, tol) == alg.dim();
}

Conjugation build_S(const AlgebraSpec& alg, const Vector& xi, double tol) {
  return build_conjugation(alg, xi, tol, "build_S");
}

Conjugation build_F(const AlgebraSpec& comm, const Vector& xi, double tol) {
  return build_conjugation(comm, xi, tol, "build_F");
}

OperatorMatrix modular_delta(const OperatorMatrix& s, double tol) {
  return core::sqrt_psd(core::compose(core::adjoint(s), s), tol);
}

OperatorMatrix modular_J(const OperatorMatrix& s, const OperatorMatrix& delta, double tol) {
  const auto es = core::eigensystem(delta, tol);
  if (es.values.empty()) return s;
  const double top = std::max(1.0, es.values.back());
  RealVector inv(static_cast<Eigen::Index>(es.values.size()));
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    if (!(es.values[k] > tol * top)) {
      throw NumericalError("modular_J: Delta is singular, inconsistent with a separating xi");
    }
    inv(static_cast<Eigen::Index>(k)) = 1.0 / es.values[k];
  }
  const Matrix dinv = es.vectors * inv.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  return core::compose(s, OperatorMatrix(dinv));
}

ModularData modular_data(const AlgebraSpec& alg, const AlgebraSpec& comm, const Vector& xi,
                         double tol) {
  ModularData out;
  out.xi = xi;
  const Conjugation s = build_S(alg, xi, tol);
  const Conjugation f = build_F(comm, xi, tol);
  out.s = s.op;
  out.f = f.op;
  out.s_condition = s.condition;
  out.f_condition = f.condition;
  out.delta = modular_delta(out.s, tol);
  out.j = modular_J(out.s, out.delta, tol);
  return out;
}

CommutationReport check_commutation(const OperatorMatrix& j, const OperatorMatrix& s,
                                    const AlgebraSpec& alg, const AlgebraSpec& comm,
                                    double tol) {
  CommutationReport out;
  out.commutant_dim = comm.dim();
  const Eigen::Index m = alg.ambient_dim();
  Matrix stacked(m * m, alg.dim());
  Eigen::Index col = 0;
  for (const auto& x : alg.basis()) {
    const Matrix jxj = core::compose(j, core::compose(OperatorMatrix(x), j)).matrix();
    out.jmj_residual = std::max(out.jmj_residual, expansion_residual(jxj, comm.basis()));
    stacked.col(col++) = Eigen::Map<const Vector>(jxj.data(), m * m);

    const Matrix sxs = core::compose(s, core::compose(OperatorMatrix(x), s)).matrix();
    for (const auto& y : alg.basis()) {
      out.sxs_residual = std::max(out.sxs_residual, core::max_abs(sxs * y - y * sxs));
    }
  }
  out.jmj_rank = core::numerical_rank(stacked, tol);
  return out;
}

double modular_flow_check(const OperatorMatrix& delta, const AlgebraSpec& alg,
                          const std::vector<double>& t_list, double tol) {
  double worst = 0.0;
  for (double t : t_list) {
    const Matrix u = core::unitary_power(delta, t, tol).matrix();
    for (const auto& x : alg.basis()) {
      worst = std::max(worst, expansion_residual(u * x * u.adjoint(), alg.basis()));
    }
  }
  return worst;
}

MaximalityCheck maximality_check(const OperatorMatrix& s, const OperatorMatrix& f, double tol) {
  MaximalityCheck out;
  const OperatorMatrix f_star = core::adjoint(f);
  out.f_star_minus_s = core::max_abs_diff(f_star, s);
  out.maximal = out.f_star_minus_s < tol;
  out.pair = pair::check_pair(pair::SymmetricPairSpec(s, f), tol);

  // zeta (+) F* zeta is orthogonal to u (+) S u for every u:
  // <u, zeta> + <S u, F* zeta> = 0. Real-linear in zeta; split into real and
  // imaginary parts over the real basis {e_j, i e_j}.
  const Eigen::Index m = s.cols();
  const RealMatrix rf = core::realify(f_star).matrix().real();
  RealMatrix system(4 * m, 2 * m);
  Eigen::Index row = 0;
  for (Eigen::Index jdx = 0; jdx < m; ++jdx) {
    for (cplx scale : {cplx(1.0, 0.0), kI}) {
      Vector u = Vector::Zero(m);
      u(jdx) = scale;
      const Vector su = s.apply(u);
      for (cplx part : {cplx(1.0, 0.0), kI}) {
        // Re<part a, b> is Re<a,b> for part = 1 and Im<a,b> for part = i.
        const RealVector a = core::realify(Vector(part * u)).real();
        const RealVector b = core::realify(Vector(part * su)).real();
        system.row(row++) = a.transpose() + b.transpose() * rf;
      }
    }
  }
  out.graph_kernel_dim =
      static_cast<Eigen::Index>(core::null_space(OperatorMatrix(system.cast<cplx>()), tol).size());
  const RealMatrix shifted = rf + RealMatrix::Identity(2 * m, 2 * m);
  out.eigen_kernel_dim =
      static_cast<Eigen::Index>(core::null_space(OperatorMatrix(shifted.cast<cplx>()), tol).size());
  return out;
}

}  // namespace symp::modular
