#include "symp/core/json_io.hpp"

#include <string>

namespace symp::core {

namespace {

cplx entry_from_json(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw DomainError("matrix entry must be [re, im]");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

nlohmann::json matrix_to_json(const OperatorMatrix& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.cols(); ++c) {
      entries.push_back({t(r, c).real(), t(r, c).imag()});
    }
  }
  return {{"rows", t.rows()},
          {"cols", t.cols()},
          {"linearity", std::string(to_string(t.linearity()))},
          {"entries", std::move(entries)}};
}

OperatorMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("matrix must be a JSON object");
  for (const char* key : {"rows", "cols", "entries"}) {
    if (!j.contains(key)) throw DomainError(std::string("matrix is missing '") + key + "'");
  }
  const auto rows = j.at("rows").get<long long>();
  const auto cols = j.at("cols").get<long long>();
  if (rows < 0 || cols < 0) throw DomainError("matrix dimensions must be non-negative");
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols) {
    throw DomainError("matrix entries must list rows*cols = " +
                      std::to_string(rows * cols) + " values");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(entries[k++]);
  }
  const Linearity lin = j.contains("linearity")
                            ? linearity_from_string(j.at("linearity").get<std::string>())
                            : Linearity::Linear;
  return OperatorMatrix(std::move(m), lin);
}

Matrix square_from_entries(const nlohmann::json& entries, Eigen::Index n) {
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n * n) {
    throw DomainError("expected " + std::to_string(n * n) + " row-major entries");
  }
  Matrix m(n, n);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = entry_from_json(entries[k++]);
  }
  return m;
}

nlohmann::json check_to_json(const CheckResult& c) {
  return {{"check", c.check}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.pass}};
}

}  // namespace symp::core
