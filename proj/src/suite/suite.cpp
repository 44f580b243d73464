#include "symp/suite/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>

#include "symp/core/json_io.hpp"
#include "symp/core/linalg.hpp"
#include "symp/malliavin/chaos.hpp"
#include "symp/malliavin/checks.hpp"
#include "symp/modular/modular.hpp"
#include "symp/network/finite.hpp"
#include "symp/network/line.hpp"
#include "symp/pair/symmetric_pair.hpp"

namespace symp::suite {

namespace {

using nlohmann::json;

// ---- parameter access -------------------------------------------------------

void require_object(const json& p, const std::string& what) {
  if (!p.is_object()) throw ConfigError(what + ": params must be an object");
}

void allow_keys(const json& p, const std::string& what, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : p.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(what + ": unknown parameter '" + key + "'");
    }
  }
}

double number(const json& p, const char* key, const std::string& what) {
  const auto& v = p.at(key);
  if (!v.is_number()) throw ConfigError(what + ": '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(what + ": '" + key + "' must be finite");
  return x;
}

double number_or(const json& p, const char* key, double fallback, const std::string& what) {
  return p.contains(key) ? number(p, key, what) : fallback;
}

long integer(const json& p, const char* key, const std::string& what) {
  const auto& v = p.at(key);
  if (!v.is_number_integer()) throw ConfigError(what + ": '" + key + "' must be an integer");
  return v.get<long>();
}

long integer_or(const json& p, const char* key, long fallback, const std::string& what) {
  return p.contains(key) ? integer(p, key, what) : fallback;
}

std::string text(const json& p, const char* key, const std::string& what) {
  const auto& v = p.at(key);
  if (!v.is_string()) throw ConfigError(what + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) {
      throw ConfigError(what + " must contain finite numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (base_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base_dir) / path).string();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---- typed parameters --------------------------------------------------------

struct PairParams {
  std::string builtin;  // "hermite" or empty
  int hermite_degree = 0;
  json a, b;
};

PairParams parse_pair(const json& p, const std::string& base_dir) {
  const std::string what = "pair";
  require_object(p, what);
  allow_keys(p, what, {"builtin", "N", "A", "B", "file"});
  PairParams out;
  if (p.contains("builtin")) {
    out.builtin = text(p, "builtin", what);
    if (out.builtin != "hermite") throw ConfigError("pair: unknown builtin '" + out.builtin + "'");
    if (!p.contains("N")) throw ConfigError("pair: builtin hermite needs 'N'");
    out.hermite_degree = static_cast<int>(integer(p, "N", what));
    if (out.hermite_degree < 1) throw ConfigError("pair: 'N' must be at least 1");
    return out;
  }
  json src = p;
  if (p.contains("file")) src = read_json_file(resolve(text(p, "file", what), base_dir));
  if (!src.is_object() || !src.contains("A") || !src.contains("B")) {
    throw ConfigError("pair: params need 'A' and 'B' matrices, a 'file', or a 'builtin'");
  }
  out.a = src.at("A");
  out.b = src.at("B");
  try {
    pair::SymmetricPairSpec(core::matrix_from_json(out.a), core::matrix_from_json(out.b));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("pair: ") + e.what());
  }
  return out;
}

struct MalliavinParams {
  int d = 1;
  int n = 1;
  RealVector k;
  bool exp_checks = false;
  double exp_inner_tol = 1e-6;
  double exp_number_tol = 1e-4;
};

MalliavinParams parse_malliavin(const json& p) {
  const std::string what = "malliavin";
  require_object(p, what);
  allow_keys(p, what, {"d", "N", "k", "exp", "exp_inner_tol", "exp_number_tol"});
  if (!p.contains("d") || !p.contains("N")) throw ConfigError("malliavin: needs 'd' and 'N'");
  MalliavinParams out;
  out.d = static_cast<int>(integer(p, "d", what));
  out.n = static_cast<int>(integer(p, "N", what));
  if (out.d < 1) throw ConfigError("malliavin: 'd' must be at least 1");
  if (out.n < 1) throw ConfigError("malliavin: 'N' must be at least 1");
  out.k = RealVector::Unit(out.d, 0);
  if (p.contains("k")) {
    const auto k = numbers(p.at("k"), "malliavin: 'k'");
    if (static_cast<int>(k.size()) != out.d) {
      throw ConfigError("malliavin: 'k' needs " + std::to_string(out.d) + " components");
    }
    out.k = Eigen::Map<const RealVector>(k.data(), out.d);
  }
  out.exp_checks = out.n >= 10;
  if (p.contains("exp")) {
    if (!p.at("exp").is_boolean()) throw ConfigError("malliavin: 'exp' must be a boolean");
    out.exp_checks = p.at("exp").get<bool>();
  }
  out.exp_inner_tol = number_or(p, "exp_inner_tol", out.exp_inner_tol, what);
  out.exp_number_tol = number_or(p, "exp_number_tol", out.exp_number_tol, what);
  return out;
}

struct ModularParams {
  int n = 2;
  Matrix rho;
  std::string rho_label;
  std::vector<double> t_list{0.5, 1.0, std::numbers::pi};
};

ModularParams parse_modular(const json& p) {
  const std::string what = "modular";
  require_object(p, what);
  allow_keys(p, what, {"n", "rho", "seed", "t_list"});
  if (!p.contains("n")) throw ConfigError("modular: needs 'n'");
  ModularParams out;
  out.n = static_cast<int>(integer(p, "n", what));
  if (out.n < 1 || out.n > 8) throw ConfigError("modular: 'n' must be in 1..8");
  const json rho = p.contains("rho") ? p.at("rho") : json("tracial");
  if (rho.is_string() && rho.get<std::string>() == "tracial") {
    out.rho = modular::tracial_density(out.n);
    out.rho_label = "tracial";
  } else if (rho.is_string() && rho.get<std::string>() == "random") {
    const long seed = integer_or(p, "seed", 1, what);
    if (seed < 0) throw ConfigError("modular: 'seed' must be non-negative");
    out.rho = modular::random_density(out.n, static_cast<std::uint64_t>(seed));
    out.rho_label = "random seed=" + std::to_string(seed);
  } else if (rho.is_object() && rho.contains("diag")) {
    const auto diag = numbers(rho.at("diag"), "modular: 'rho.diag'");
    if (static_cast<int>(diag.size()) != out.n) throw ConfigError("modular: 'rho.diag' needs n values");
    out.rho = Matrix::Zero(out.n, out.n);
    for (int i = 0; i < out.n; ++i) out.rho(i, i) = diag[static_cast<std::size_t>(i)];
    out.rho_label = "diag";
  } else if (rho.is_array()) {
    try {
      out.rho = core::square_from_entries(rho, out.n);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("modular: 'rho': ") + e.what());
    }
    out.rho_label = "explicit";
  } else {
    throw ConfigError("modular: 'rho' must be \"tracial\", \"random\", {\"diag\":[..]} or an entry list");
  }
  if (p.contains("t_list")) out.t_list = numbers(p.at("t_list"), "modular: 't_list'");
  return out;
}

struct NetworkParams {
  enum class Source { Builtin, Edges, File, Line } source = Source::Builtin;
  std::string builtin;
  int n = 3;
  double c = 1.0;
  long seed = 1;
  int count = 1;
  int n_max = 0;
  std::vector<network::Edge> edges;
  std::string origin;
  std::string file;
  network::ConductanceSequence seq;
  int window = 40;
  double phi = 1.0;
};

network::ConductanceSequence parse_sequence(const json& p, const std::string& what) {
  require_object(p, what);
  network::ConductanceSequence seq;
  const std::string kind = p.contains("kind") ? text(p, "kind", what) : "halfline";
  if (kind == "halfline") {
    seq.kind = network::LineKind::HalfLine;
  } else if (kind == "twosided") {
    seq.kind = network::LineKind::TwoSided;
  } else {
    throw ConfigError(what + ": 'kind' must be halfline or twosided");
  }
  const std::string rule = p.contains("rule") ? text(p, "rule", what) : "geometric";
  if (rule == "geometric") {
    seq.r = number_or(p, "r", 2.0, what);
  } else if (rule == "constant") {
    seq.r = 1.0;
  } else {
    throw ConfigError(what + ": 'rule' must be geometric or constant");
  }
  if (!(seq.r > 0.0)) throw ConfigError(what + ": 'r' must be positive");
  return seq;
}

NetworkParams parse_network(const json& p, const std::string& base_dir) {
  const std::string what = "network";
  require_object(p, what);
  allow_keys(p, what,
             {"builtin", "n", "c", "seed", "count", "n_max", "edges", "origin", "file", "line",
              "window", "phi"});
  NetworkParams out;
  if (p.contains("line")) {
    out.source = NetworkParams::Source::Line;
    const json& l = p.at("line");
    out.seq = parse_sequence(l, "network: 'line'");
    allow_keys(l, "network: 'line'", {"kind", "rule", "r"});
    if (out.seq.kind != network::LineKind::TwoSided) {
      throw ConfigError("network: 'line' checks use the twosided model");
    }
    out.window = static_cast<int>(integer_or(p, "window", 40, what));
    out.phi = number_or(p, "phi", 1.0, what);
    if (out.window < 2) throw ConfigError("network: 'window' must be at least 2");
    if (out.phi == 0.0) throw ConfigError("network: 'phi' must be nonzero");
  } else if (p.contains("edges")) {
    out.source = NetworkParams::Source::Edges;
    if (!p.at("edges").is_array()) throw ConfigError("network: 'edges' must be an array");
    for (const auto& e : p.at("edges")) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
          !e[2].is_number()) {
        throw ConfigError("network: each edge must be [\"x\", \"y\", c]");
      }
      out.edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<double>()});
    }
    if (!p.contains("origin")) throw ConfigError("network: 'edges' needs an 'origin'");
    out.origin = text(p, "origin", what);
  } else if (p.contains("file")) {
    out.source = NetworkParams::Source::File;
    out.file = resolve(text(p, "file", what), base_dir);
    if (!std::ifstream(out.file)) throw ConfigError("network: cannot open '" + out.file + "'");
  } else if (p.contains("builtin")) {
    out.builtin = text(p, "builtin", what);
    out.n = static_cast<int>(integer_or(p, "n", 3, what));
    out.c = number_or(p, "c", 1.0, what);
    out.seed = integer_or(p, "seed", 1, what);
    out.count = static_cast<int>(integer_or(p, "count", 1, what));
    out.n_max = static_cast<int>(integer_or(p, "n_max", 0, what));
    if (out.builtin != "path" && out.builtin != "cycle" && out.builtin != "random") {
      throw ConfigError("network: unknown builtin '" + out.builtin + "'");
    }
    if (out.n < 2 || out.n > 2000) throw ConfigError("network: 'n' must be in 2..2000");
    if (out.count < 1) throw ConfigError("network: 'count' must be positive");
    if (out.seed < 0) throw ConfigError("network: 'seed' must be non-negative");
    if (out.n_max != 0 && (out.n_max < out.n || out.n_max > 2000)) {
      throw ConfigError("network: 'n_max' must be in n..2000");
    }
  } else {
    throw ConfigError("network: params need 'builtin', 'edges', 'file' or 'line'");
  }
  return out;
}

struct DefectParams {
  network::ConductanceSequence seq;
  int nmax = 80;
  double psi0 = 1.0;
  std::optional<network::Verdict> expect;
};

DefectParams parse_defect(const json& p) {
  const std::string what = "defect";
  require_object(p, what);
  allow_keys(p, what, {"kind", "rule", "r", "nmax", "psi0", "expect"});
  DefectParams out;
  out.seq = parse_sequence(p, what);
  if (out.seq.kind != network::LineKind::HalfLine) {
    throw ConfigError("defect: the recurrence runs on the halfline");
  }
  out.nmax = static_cast<int>(integer_or(p, "nmax", 80, what));
  if (out.nmax < 3) throw ConfigError("defect: 'nmax' must be at least 3");
  out.psi0 = number_or(p, "psi0", 1.0, what);
  if (p.contains("expect")) {
    const std::string e = text(p, "expect", what);
    if (e == "CONVERGES") {
      out.expect = network::Verdict::Converges;
    } else if (e == "DIVERGES") {
      out.expect = network::Verdict::Diverges;
    } else if (e == "INCONCLUSIVE") {
      out.expect = network::Verdict::Inconclusive;
    } else {
      throw ConfigError("defect: 'expect' must be CONVERGES, DIVERGES or INCONCLUSIVE");
    }
  }
  return out;
}

void validate(const SuiteEntry& e, const std::string& base_dir) {
  switch (e.kind) {
    case Kind::Pair: parse_pair(e.params, base_dir); break;
    case Kind::Malliavin: parse_malliavin(e.params); break;
    case Kind::Modular: parse_modular(e.params); break;
    case Kind::Network: parse_network(e.params, base_dir); break;
    case Kind::Defect: parse_defect(e.params); break;
  }
}

// ---- running -----------------------------------------------------------------

struct Outcome {
  double residual = 0.0;
  std::string message;
  std::optional<double> tol;

  Outcome(double r) : residual(r) {}  // NOLINT: implicit on purpose
  Outcome(double r, std::string m) : residual(r), message(std::move(m)) {}
};

class Recorder {
 public:
  Recorder(std::string suite, double tol) : suite_(std::move(suite)), tol_(tol) {}

  void add(const std::string& check, const std::string& anchor,
           const std::function<Outcome()>& body, std::optional<double> tol = {}) {
    Record r{suite_, check, anchor, 0.0, tol.value_or(tol_), false, {}};
    try {
      Outcome o = body();
      r.residual = o.residual;
      r.message = std::move(o.message);
      r.pass = std::isfinite(r.residual) && r.residual <= r.tol;
    } catch (const std::exception& e) {
      r.residual = std::nan("");
      r.message = std::string("error: ") + e.what();
    }
    records_.push_back(std::move(r));
  }

  // Exact-count checks: residual |got - want|, tolerance 0.
  void count(const std::string& check, const std::string& anchor,
             const std::function<Outcome()>& body) {
    add(check, anchor, body, 0.0);
  }

  std::vector<Record> take() { return std::move(records_); }

 private:
  std::string suite_;
  double tol_;
  std::vector<Record> records_;
};

void run_pair_checks(Recorder& rec, const pair::SymmetricPairSpec& spec, const std::string& tag) {
  const bool conj = spec.linearity() == core::Linearity::ConjugateLinear;
  double residual = 0.0;
  rec.add("pair_identity", conj ? "Eq (2.3)" : "Eq (2.1)", [&] {
    residual = pair::check_pair(spec).residual;
    return Outcome(residual, tag);
  });
  rec.add("block_symmetry", "Eq (2.12)", [&] {
    const double defect = pair::symmetry_defect(pair::build_L(spec));
    return Outcome(defect, "2 x pair residual = " + fmt(2.0 * residual));
  });
  rec.add("lstar_adjoint", "Cor 2.18", [&] {
    return Outcome(core::max_abs_diff(pair::build_Lstar(spec).l, core::adjoint(pair::build_L(spec).l)));
  });
  rec.count("deficiency_indices", "Thm 2.20(a)", [&] {
    const auto d = pair::deficiency(spec);
    return Outcome(static_cast<double>(d.n_plus + d.n_minus),
                   "n+=" + std::to_string(d.n_plus) + " n-=" + std::to_string(d.n_minus));
  });
  rec.add("maximality", "Def 2.11", [&] {
    const auto m = pair::is_maximal(spec);
    return Outcome(std::max(m.a_minus_b_star, m.b_minus_a_star));
  });
  rec.count("defect_eig", "Lemma 2.15", [&] {
    return Outcome(static_cast<double>(pair::defect_eig(spec).size()));
  });
}

std::vector<Record> run_pair(const SuiteEntry& e) {
  const PairParams p = parse_pair(e.params, "");
  Recorder rec(e.name, e.tol);
  if (p.builtin == "hermite") {
    const auto spec = malliavin::hermite_pair(p.hermite_degree);
    run_pair_checks(rec, spec, "hermite N=" + std::to_string(p.hermite_degree));
  } else {
    const pair::SymmetricPairSpec spec(core::matrix_from_json(p.a), core::matrix_from_json(p.b));
    run_pair_checks(rec, spec, "");
  }
  return rec.take();
}

std::vector<Record> run_malliavin(const SuiteEntry& e) {
  const MalliavinParams p = parse_malliavin(e.params);
  Recorder rec(e.name, e.tol);
  const std::string tag = "d=" + std::to_string(p.d) + " N=" + std::to_string(p.n);
  std::optional<malliavin::ChaosBasis> basis;
  rec.count("basis", "Eq (3.2)", [&] {
    basis.emplace(p.d, p.n);
    return Outcome(0.0, tag + " size=" + std::to_string(basis->size()));
  });
  if (!basis) return rec.take();
  const auto& b = *basis;
  rec.add("pair_identity", "Eq (3.15)", [&] { return Outcome(malliavin::ts_pair_residual(b), tag); });
  rec.add("integration_by_parts", "Eq (3.11)", [&] { return Outcome(malliavin::ibp_residual(b)); });
  rec.add("number_operator", "Cor 3.18", [&] { return Outcome(malliavin::number_operator_residual(b)); });
  rec.count("kernel_dimension", "Cor 3.18", [&] {
    const auto dim = malliavin::kernel_dimension(b);
    return Outcome(std::abs(static_cast<double>(dim) - 1.0), "dim=" + std::to_string(dim));
  });
  rec.add("tk_sum", "Cor 3.14", [&] { return Outcome(malliavin::tk_sum_residual(b, p.k)); });
  rec.add("derivation", "Eq (3.14)", [&] { return Outcome(malliavin::derivation_residual(b)); });
  rec.add("maximal_section", "Thm 3.13", [&] {
    const auto spec = malliavin::ts_pair(b);
    const auto low = b.up_to_degree(p.n - 1);
    std::vector<Eigen::Index> h2;
    for (int i = 0; i < p.d; ++i) {
      for (Eigen::Index j : low) h2.push_back(i * b.size() + j);
    }
    const auto m = pair::is_maximal(spec.compress(low, h2));
    return Outcome(std::max(m.a_minus_b_star, m.b_minus_a_star));
  });
  if (p.exp_checks) {
    rec.add("exp_inner", "Eq (3.3)", [&] {
      const auto ev = malliavin::exp_vector(b, p.k);
      return Outcome(malliavin::exp_inner_residual(b, p.k, p.k),
                     "tail=" + fmt(ev.tail) + (ev.tail_ok ? "" : " (tail above 1e-9)"));
    }, p.exp_inner_tol);
    rec.add("exp_number", "Cor 3.17", [&] {
      return Outcome(malliavin::exp_number_residual(b, p.k), "|k|=" + fmt(p.k.norm()));
    }, p.exp_number_tol);
    rec.count("exp_number_decreasing", "Cor 3.17", [&] {
      int increases = 0;
      double last = INFINITY;
      for (int n = 4 - p.n % 2; n <= p.n; n += 2) {
        const double r = malliavin::exp_number_residual(malliavin::ChaosBasis(p.d, n), p.k);
        if (!(r < last)) ++increases;
        last = r;
      }
      return Outcome(static_cast<double>(increases),
                     std::to_string(increases) + " non-decreasing steps");
    });
  }
  return rec.take();
}

std::vector<Record> run_modular(const SuiteEntry& e) {
  const ModularParams p = parse_modular(e.params);
  Recorder rec(e.name, e.tol);
  const std::string tag = "n=" + std::to_string(p.n) + " rho=" + p.rho_label;
  std::optional<modular::StandardForm> sf;
  std::optional<modular::ModularData> md;
  rec.count("standard_form", "Remark 4.3", [&] {
    sf.emplace(modular::standard_form(p.n, p.rho));
    md.emplace(modular::modular_data(sf->alg, sf->commutant, sf->xi));
    return Outcome(0.0, tag);
  });
  if (!md) return rec.take();
  const auto m2 = static_cast<Eigen::Index>(p.n) * p.n;
  rec.add("commutant", "Eq (4.1)", [&] {
    return Outcome(modular::double_commutant_residual(sf->alg),
                   "dim M'=" + std::to_string(sf->commutant.dim()));
  });
  rec.count("cyclic", "Def 4.2", [&] {
    return Outcome(static_cast<double>(m2 - modular::orbit_rank(sf->alg, sf->xi)));
  });
  rec.count("separating", "Def 4.2", [&] {
    return Outcome(modular::separating_check(sf->alg, sf->xi) ? 0.0 : 1.0);
  });
  const pair::SymmetricPairSpec sfpair(md->s, md->f);
  rec.add("pair_identity", "Eq (2.3)", [&] {
    return Outcome(pair::check_pair(sfpair).residual,
                   "cond(S)=" + fmt(md->s_condition) + " cond(F)=" + fmt(md->f_condition));
  });
  rec.add("delta_conjugation", "Eq (4.8)", [&] {
    // Delta^2 against h -> rho h rho^{-1}, vec(rho h rho^{-1}) = (rho^{-T} (x) rho) vec(h).
    const Matrix rho_inv = p.rho.inverse();
    const Matrix conj_action = modular::kron(rho_inv.transpose(), p.rho);
    return Outcome(core::max_abs(md->delta.matrix() * md->delta.matrix() - conj_action));
  });
  rec.add("delta_spectrum", "Eq (4.8)", [&] {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p.rho + p.rho.adjoint()));
    std::vector<double> want;
    for (Eigen::Index i = 0; i < p.n; ++i) {
      for (Eigen::Index j = 0; j < p.n; ++j) {
        want.push_back(std::sqrt(es.eigenvalues()(i) / es.eigenvalues()(j)));
      }
    }
    std::sort(want.begin(), want.end());
    const auto got = core::spectrum(md->delta);
    double worst = 0.0;
    for (std::size_t k = 0; k < want.size(); ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
    return Outcome(worst, "sqrt of the eigenvalue ratios of rho");
  });
  rec.add("j_isometry", "Eq (4.9)", [&] {
    const Matrix& j = md->j.matrix();
    return Outcome(core::max_abs(j.adjoint() * j - Matrix::Identity(m2, m2)));
  });
  rec.add("j_involution", "Eq (4.9)", [&] {
    return Outcome(core::max_abs(core::compose(md->j, md->j).matrix() - Matrix::Identity(m2, m2)));
  });
  rec.add("s_equals_j_delta", "Eq (4.9)", [&] {
    return Outcome(core::max_abs_diff(core::compose(md->j, md->delta), md->s));
  });
  rec.add("jmj_commutant", "Thm 4.10", [&] {
    const auto cr = modular::check_commutation(md->j, md->s, sf->alg, sf->commutant);
    return Outcome(cr.jmj_residual, "rank JMJ=" + std::to_string(cr.jmj_rank) +
                                        " dim M'=" + std::to_string(cr.commutant_dim));
  });
  rec.add("modular_flow", "Eq (4.10)", [&] {
    std::string ts;
    for (double t : p.t_list) ts += (ts.empty() ? "t=" : ",") + fmt(t);
    return Outcome(modular::modular_flow_check(md->delta, sf->alg, p.t_list), ts);
  });
  rec.add("maximality", "Thm 4.11", [&] {
    const auto mc = modular::maximality_check(md->s, md->f);
    return Outcome(mc.f_star_minus_s,
                   "graph kernel dim=" + std::to_string(mc.graph_kernel_dim) +
                       " F*z=-z dim=" + std::to_string(mc.eigen_kernel_dim));
  });
  return rec.take();
}

void run_finite_network_checks(Recorder& rec, const std::vector<network::FiniteNetwork>& nets,
                               const std::string& tag) {
  auto worst = [&](const std::function<double(const network::FiniteNetwork&)>& f) {
    double w = 0.0;
    for (const auto& net : nets) w = std::max(w, f(net));
    return Outcome(w, tag);
  };
  rec.add("delta_energy", "Remark 5.8", [&] { return worst(network::delta_energy_residual); });
  rec.add("kernel_laplacian", "Eq (5.11)", [&] { return worst(network::kernel_laplacian_residual); });
  rec.add("reproducing", "Eq (5.5)", [&] { return worst(network::reproducing_residual); });
  rec.add("delta_inner", "Lemma 5.15", [&] { return worst(network::delta_inner_residual); });
  rec.add("pair_K_Delta", "Thm 5.17", [&] { return worst(network::pair_K_Delta_check); });
}

std::vector<Record> run_line(const SuiteEntry& e, const NetworkParams& p) {
  Recorder rec(e.name, e.tol);
  const std::string tag = "twosided r=" + fmt(p.seq.r) + " window=" + std::to_string(p.window);
  std::optional<network::HarmonicRun> run;
  rec.count("harmonic_flux", "Def 5.10", [&] {
    run.emplace(network::harmonic_flux(p.seq, p.phi, p.window));
    return Outcome(0.0, tag);
  });
  if (!run) return rec.take();
  const auto net = network::window_network(p.seq, p.window);
  const RealVector h = network::harmonic_values(*run);
  // Both sides contribute the series sum_{k>=0} r^{-k}.
  const double sum_inv = 2.0 / (1.0 - 1.0 / p.seq.r);
  rec.add("harmonic_laplacian", "Eq (5.7)", [&] { return Outcome(run->max_laplacian); });
  rec.add("harmonic_energy", "Def 5.10", [&] {
    const double closed = p.phi * p.phi * sum_inv;
    return Outcome(std::abs(run->energy + run->tail_bound - closed),
                   "energy=" + fmt(run->energy) + " tail=" + fmt(run->tail_bound) +
                       " closed form=" + fmt(closed));
  });
  rec.add("royden_delta", "Thm 5.11", [&] {
    const auto split = network::royden_project(net, network::delta(net, net.index_of("0")), h,
                                               run->tail_bound);
    return Outcome(split.harm.cwiseAbs().maxCoeff());
  });
  rec.add("royden_dipole", "Thm 5.11", [&] {
    RealVector v1 = RealVector::Zero(net.size());
    for (long n = 1; n <= p.window + 1; ++n) v1(net.index_of(std::to_string(n))) = 1.0 / p.seq.c(0);
    const auto split = network::royden_project(net, v1, h, run->tail_bound);
    const double want = (run->at(1) - run->at(0)) / (run->energy + run->tail_bound);
    return Outcome(std::abs(split.coefficient - want) + split.orthogonality,
                   "coefficient=" + fmt(split.coefficient));
  });
  rec.add("harmonic_pairing", "Lemma 5.20", [&] {
    double worst = 0.0;
    for (long x = -p.window + 1; x <= p.window; ++x) {
      worst = std::max(worst, network::harmonic_pairing_check(net, net.index_of(std::to_string(x)), h));
    }
    return Outcome(worst);
  });
  return rec.take();
}

std::vector<Record> run_network(const SuiteEntry& e) {
  const NetworkParams p = parse_network(e.params, "");
  if (p.source == NetworkParams::Source::Line) return run_line(e, p);
  Recorder rec(e.name, e.tol);
  std::vector<network::FiniteNetwork> nets;
  std::string tag;
  rec.count("network", "Def 5.2", [&] {
    switch (p.source) {
      case NetworkParams::Source::Edges:
        nets.push_back(network::FiniteNetwork::from_edges(p.edges, p.origin));
        tag = "edges";
        break;
      case NetworkParams::Source::File:
        nets.push_back(network::FiniteNetwork::parse_file(p.file));
        tag = p.file;
        break;
      default:
        if (p.builtin == "path") {
          nets.push_back(network::path_graph(p.n, p.c));
          tag = "path n=" + std::to_string(p.n);
        } else if (p.builtin == "cycle") {
          nets.push_back(network::cycle_graph(p.n, p.c));
          tag = "cycle n=" + std::to_string(p.n);
        } else {
          for (int k = 0; k < p.count; ++k) {
            const auto seed = static_cast<std::uint64_t>(p.seed + k);
            const int n = p.n_max > p.n ? p.n + static_cast<int>((seed * 7919) % static_cast<std::uint64_t>(p.n_max - p.n + 1))
                                        : p.n;
            nets.push_back(network::random_connected(n, seed));
          }
          tag = "random seeds=" + std::to_string(p.seed) + ".." + std::to_string(p.seed + p.count - 1);
        }
    }
    std::size_t vertices = 0;
    for (const auto& net : nets) vertices = std::max<std::size_t>(vertices, static_cast<std::size_t>(net.size()));
    return Outcome(0.0, tag + " networks=" + std::to_string(nets.size()) +
                            " max vertices=" + std::to_string(vertices));
  });
  if (nets.empty()) return rec.take();
  run_finite_network_checks(rec, nets, tag);
  return rec.take();
}

std::vector<Record> run_defect(const SuiteEntry& e) {
  const DefectParams p = parse_defect(e.params);
  Recorder rec(e.name, e.tol);
  std::optional<network::DefectRun> run;
  rec.add("recurrence_residual", "Eq (5.14)", [&] {
    run.emplace(network::defect_recurrence(p.seq, p.nmax, p.psi0));
    const auto& t = run->thresholds;
    std::string msg = "r=" + fmt(p.seq.r) + " nmax=" + std::to_string(p.nmax) +
                      " verdict=" + network::to_string(run->verdict) +
                      " energy=" + fmt(run->energy.empty() ? 0.0 : run->energy.back()) +
                      " l2(psi)=" + fmt(run->l2_psi) + " l2(lap psi)=" + fmt(run->l2_laplacian) +
                      " thresholds=" + fmt(t.tail_ratio) + "/" + fmt(t.blowup) + "/" +
                      fmt(t.stagnation);
    if (run->overflow) msg += " overflow";
    return Outcome(run->max_residual, msg);
  });
  if (run && p.expect) {
    rec.count("verdict", "Thm 5.18", [&] {
      return Outcome(run->verdict == *p.expect ? 0.0 : 1.0,
                     "got " + network::to_string(run->verdict) + ", expected " +
                         network::to_string(*p.expect));
    });
  }
  return rec.take();
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Pair: return "pair";
    case Kind::Malliavin: return "malliavin";
    case Kind::Modular: return "modular";
    case Kind::Network: return "network";
    case Kind::Defect: return "defect";
  }
  return "pair";
}

Kind kind_from_string(const std::string& s) {
  for (Kind k : {Kind::Pair, Kind::Malliavin, Kind::Modular, Kind::Network, Kind::Defect}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown suite kind '" + s + "'");
}

double default_tolerance() {
  const char* env = std::getenv("SYMPAIR_TOL");
  if (env == nullptr || *env == '\0') return kIdentityTol;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(tol) || tol < 0.0) {
    throw ConfigError(std::string("SYMPAIR_TOL='") + env + "' is not a non-negative number");
  }
  return tol;
}

SuiteConfig parse_config(const json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("suites") || !j.at("suites").is_array()) {
    throw ConfigError("config needs a top-level 'suites' array");
  }
  SuiteConfig out;
  std::size_t index = 0;
  for (const auto& s : j.at("suites")) {
    const std::string where = "suite " + std::to_string(index++);
    if (!s.is_object() || !s.contains("kind") || !s.at("kind").is_string()) {
      throw ConfigError(where + ": needs a string 'kind'");
    }
    for (const auto& [key, value] : s.items()) {
      if (key != "kind" && key != "params" && key != "tol" && key != "name") {
        throw ConfigError(where + ": unknown field '" + key + "'");
      }
    }
    SuiteEntry e;
    e.kind = kind_from_string(s.at("kind").get<std::string>());
    e.name = s.contains("name") ? text(s, "name", where) : to_string(e.kind);
    e.params = s.contains("params") ? s.at("params") : json::object();
    if (s.contains("tol")) {
      e.tol = number(s, "tol", where);
      if (e.tol < 0.0) throw ConfigError(where + ": 'tol' must be non-negative");
    } else {
      e.tol = default_tolerance();
    }
    // Resolve file references now so the run does not depend on the cwd.
    if (e.params.is_object() && e.params.contains("file") && e.params.at("file").is_string()) {
      e.params["file"] = resolve(e.params.at("file").get<std::string>(), base_dir);
    }
    validate(e, "");
    out.suites.push_back(std::move(e));
  }
  return out;
}

SuiteConfig parse_config_file(const std::string& path) {
  const json j = read_json_file(path);
  return parse_config(j, std::filesystem::path(path).parent_path().string());
}

std::vector<Record> run_entry(const SuiteEntry& entry) {
  switch (entry.kind) {
    case Kind::Pair: return run_pair(entry);
    case Kind::Malliavin: return run_malliavin(entry);
    case Kind::Modular: return run_modular(entry);
    case Kind::Network: return run_network(entry);
    case Kind::Defect: return run_defect(entry);
  }
  return {};
}

Report run_suite(const SuiteConfig& config) {
  Report report;
  for (const auto& entry : config.suites) {
    auto records = run_entry(entry);
    report.records.insert(report.records.end(), std::make_move_iterator(records.begin()),
                          std::make_move_iterator(records.end()));
  }
  return report;
}

}  // namespace symp::suite
