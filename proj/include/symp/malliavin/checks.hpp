#pragma once

#include "symp/malliavin/chaos.hpp"

namespace symp::malliavin {

// Residual checks on a truncated chaos. Quantifiers stop at degree N-1
// unless stated otherwise, where the sections are exact.

/// check_pair on ts_pair(basis).
double ts_pair_residual(const ChaosBasis& basis);

/// max |<T F, 1 (x) e_i> - <F, Phi(e_i)>| over basis F of degree <= N-1.
double ibp_residual(const ChaosBasis& basis);

/// max |T*T H_alpha - |alpha| H_alpha| entrywise, |alpha| <= N-1.
double number_operator_residual(const ChaosBasis& basis);

/// Dimension of the null space of the T section.
std::size_t kernel_dimension(const ChaosBasis& basis);

/// max |(T_k + T_k*) - M_Phi(k)| entrywise on columns of degree <= N-1.
double tk_sum_residual(const ChaosBasis& basis, const RealVector& k);

/// max over basis H, K with deg H + deg K <= N-1 of the weighted norm of
/// T(HK) - T(H)K - HT(K), relative to 1 + |T(H)K + HT(K)|.
double derivation_residual(const ChaosBasis& basis);

/// |<E_k1, E_k2> - e^{<k1,k2>}| with truncated exponential vectors.
double exp_inner_residual(const ChaosBasis& basis, const RealVector& k1, const RealVector& k2);

/// |T*T e^{Phi(k)} - (Phi(k) - |k|^2) e^{Phi(k)}| in the chaos norm.
double exp_number_residual(const ChaosBasis& basis, const RealVector& k);

}  // namespace symp::malliavin
