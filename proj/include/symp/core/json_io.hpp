#pragma once

#include <nlohmann/json.hpp>

#include "symp/core/check.hpp"
#include "symp/core/operator_matrix.hpp"

namespace symp::core {

// {"rows":R,"cols":C,"linearity":"linear"|"conjugate","entries":[[re,im],...]}
// with entries in row-major order.
nlohmann::json matrix_to_json(const OperatorMatrix& t);
OperatorMatrix matrix_from_json(const nlohmann::json& j);

// Entries as a row-major [[re,im],...] list of an n x n matrix.
Matrix square_from_entries(const nlohmann::json& entries, Eigen::Index n);

// {"check":"name","residual":r,"tol":t,"pass":bool}
nlohmann::json check_to_json(const CheckResult& c);

}  // namespace symp::core
