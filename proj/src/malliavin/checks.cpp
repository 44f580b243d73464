#include "symp/malliavin/checks.hpp"

#include <algorithm>
#include <cmath>

#include "symp/core/linalg.hpp"

namespace symp::malliavin {

namespace {

void require_k(const ChaosBasis& basis, const RealVector& k) {
  if (k.size() != basis.d()) {
    throw DomainError("k has " + std::to_string(k.size()) + " components, expected " +
                      std::to_string(basis.d()));
  }
}

}  // namespace

double ts_pair_residual(const ChaosBasis& basis) {
  return pair::check_pair(ts_pair(basis)).residual;
}

double ibp_residual(const ChaosBasis& basis) {
  const Vector one = basis.unit(MultiIndex(static_cast<std::size_t>(basis.d()), 0));
  double worst = 0.0;
  for (Eigen::Index j : basis.up_to_degree(basis.max_degree() - 1)) {
    const Vector f = Vector::Unit(basis.size(), j);
    const ChaosField tf = T_apply(basis, f);
    for (int i = 0; i < basis.d(); ++i) {
      const cplx lhs = basis.inner(tf[static_cast<std::size_t>(i)], one);
      const cplx rhs = basis.inner(f, mult_phi(basis, i, one).value);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double number_operator_residual(const ChaosBasis& basis) {
  double worst = 0.0;
  for (Eigen::Index j : basis.up_to_degree(basis.max_degree() - 1)) {
    const Vector v = Vector::Unit(basis.size(), j);
    worst = std::max(worst, core::max_abs(number_operator(basis, v) -
                                          static_cast<double>(basis.degree(j)) * v));
  }
  return worst;
}

std::size_t kernel_dimension(const ChaosBasis& basis) {
  return core::null_space(core::OperatorMatrix(T_matrix(basis))).size();
}

double tk_sum_residual(const ChaosBasis& basis, const RealVector& k) {
  require_k(basis, k);
  Matrix tk = Matrix::Zero(basis.size(), basis.size());
  Matrix mk = Matrix::Zero(basis.size(), basis.size());
  for (int i = 0; i < basis.d(); ++i) {
    tk += k(i) * derivative_matrix(basis, i);
    mk += k(i) * mult_matrix(basis, i);
  }
  const Matrix diff = tk + weighted_adjoint(tk, basis.weights(), basis.weights()) - mk;
  double worst = 0.0;
  for (Eigen::Index j : basis.up_to_degree(basis.max_degree() - 1)) {
    worst = std::max(worst, diff.col(j).cwiseAbs().maxCoeff());
  }
  return worst;
}

double derivation_residual(const ChaosBasis& basis) {
  const int top = basis.max_degree() - 1;
  double worst = 0.0;
  for (Eigen::Index a : basis.up_to_degree(top)) {
    const Vector f = Vector::Unit(basis.size(), a);
    const ChaosField tf = T_apply(basis, f);
    for (Eigen::Index b : basis.up_to_degree(top - basis.degree(a))) {
      const Vector g = Vector::Unit(basis.size(), b);
      const Truncated fg = product(basis, f, g);
      const ChaosField tfg = T_apply(basis, fg.value);
      const ChaosField tg = T_apply(basis, g);
      for (int i = 0; i < basis.d(); ++i) {
        const auto si = static_cast<std::size_t>(i);
        const Vector rhs = product(basis, tf[si], g).value + product(basis, f, tg[si]).value;
        worst = std::max(worst, basis.norm(tfg[si] - rhs) / (1.0 + basis.norm(rhs)));
      }
    }
  }
  return worst;
}

double exp_inner_residual(const ChaosBasis& basis, const RealVector& k1, const RealVector& k2) {
  require_k(basis, k1);
  require_k(basis, k2);
  const cplx ip = basis.inner(exp_vector(basis, k1).coeffs, exp_vector(basis, k2).coeffs);
  return std::abs(ip - std::exp(k1.dot(k2)));
}

double exp_number_residual(const ChaosBasis& basis, const RealVector& k) {
  require_k(basis, k);
  const Vector f = std::exp(0.5 * k.squaredNorm()) * exp_vector(basis, k).coeffs;
  Vector rhs = -k.squaredNorm() * f;
  for (int i = 0; i < basis.d(); ++i) rhs += k(i) * mult_phi(basis, i, f).value;
  return basis.norm(number_operator(basis, f) - rhs);
}

}  // namespace symp::malliavin
