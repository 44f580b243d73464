#include "symp/network/finite.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "symp/core/random.hpp"

namespace symp::network {

namespace {

void require_function(const FiniteNetwork& net, const RealVector& u, const char* what) {
  if (u.size() != net.size()) {
    throw DomainError(std::string(what) + ": function has " + std::to_string(u.size()) +
                      " values, network has " + std::to_string(net.size()) + " vertices");
  }
}

void require_vertex(const FiniteNetwork& net, Eigen::Index x) {
  if (x < 0 || x >= net.size()) throw DomainError("vertex index out of range");
}

bool connected(const RealMatrix& c) {
  const Eigen::Index n = c.rows();
  if (n == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const Eigen::Index x = stack.back();
    stack.pop_back();
    for (Eigen::Index y = 0; y < n; ++y) {
      if (c(x, y) > 0.0 && !seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
  }
  for (bool s : seen) {
    if (!s) return false;
  }
  return true;
}

RealMatrix grounded(const FiniteNetwork& net, const std::vector<Eigen::Index>& free) {
  const auto k = static_cast<Eigen::Index>(free.size());
  const RealMatrix& c = net.conductance();
  RealMatrix l(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      l(i, j) = i == j ? net.total_conductance()(free[static_cast<std::size_t>(i)])
                       : -c(free[static_cast<std::size_t>(i)], free[static_cast<std::size_t>(j)]);
    }
  }
  return l;
}

std::vector<Eigen::Index> free_vertices(const FiniteNetwork& net) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index x = 0; x < net.size(); ++x) {
    if (x != net.origin()) out.push_back(x);
  }
  return out;
}

}  // namespace

FiniteNetwork::FiniteNetwork(std::vector<std::string> ids, RealMatrix conductance,
                             Eigen::Index origin)
    : ids_(std::move(ids)), c_(std::move(conductance)), origin_(origin) {
  const auto n = static_cast<Eigen::Index>(ids_.size());
  if (n == 0) throw DomainError("network needs at least one vertex");
  if (c_.rows() != n || c_.cols() != n) {
    throw DomainError("conductance matrix must be " + std::to_string(n) + "x" +
                      std::to_string(n));
  }
  if (origin_ < 0 || origin_ >= n) throw DomainError("origin index out of range");
  if (!c_.allFinite()) throw DomainError("conductances must be finite");
  for (Eigen::Index x = 0; x < n; ++x) {
    if (c_(x, x) != 0.0) throw DomainError("conductance c_xx must be zero (no self-loops)");
    for (Eigen::Index y = 0; y < n; ++y) {
      if (c_(x, y) < 0.0) throw DomainError("conductances must be non-negative");
      if (c_(x, y) != c_(y, x)) throw DomainError("conductances must be symmetric");
    }
  }
  std::map<std::string, int> seen;
  for (const auto& id : ids_) {
    if (seen[id]++) throw DomainError("duplicate vertex id '" + id + "'");
  }
  cx_ = c_.rowwise().sum();
  if (n > 1 && cx_.minCoeff() <= 0.0) throw DomainError("every vertex needs c(x) > 0");
  if (!connected(c_)) throw DomainError("network must be connected");
}

FiniteNetwork FiniteNetwork::from_edges(const std::vector<Edge>& edges,
                                        const std::string& origin) {
  std::vector<std::string> ids;
  std::map<std::string, Eigen::Index> index;
  auto add = [&](const std::string& id) {
    if (!index.count(id)) {
      index[id] = static_cast<Eigen::Index>(ids.size());
      ids.push_back(id);
    }
    return index[id];
  };
  std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> list;
  for (const auto& e : edges) {
    if (!(e.c > 0.0) || !std::isfinite(e.c)) {
      throw DomainError("edge " + e.a + " " + e.b + ": conductance must be positive and finite");
    }
    if (e.a == e.b) throw DomainError("edge " + e.a + " " + e.b + " is a self-loop");
    const Eigen::Index a = add(e.a);  // sequenced: ids follow first appearance
    const Eigen::Index b = add(e.b);
    list.emplace_back(a, b, e.c);
  }
  if (!index.count(origin)) {
    if (edges.empty()) {
      add(origin);
    } else {
      throw DomainError("origin '" + origin + "' is not a vertex of the network");
    }
  }
  const auto n = static_cast<Eigen::Index>(ids.size());
  RealMatrix c = RealMatrix::Zero(n, n);
  for (const auto& [a, b, w] : list) {
    c(a, b) += w;
    c(b, a) += w;
  }
  return FiniteNetwork(std::move(ids), std::move(c), index.at(origin));
}

FiniteNetwork FiniteNetwork::parse(std::istream& in) {
  std::vector<Edge> edges;
  std::string origin;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (tok[0] == "origin") {
      if (tok.size() != 2) throw DomainError(where + "expected 'origin <vertex>'");
      if (!origin.empty()) throw DomainError(where + "origin declared twice");
      origin = tok[1];
      continue;
    }
    if (tok.size() != 3) throw DomainError(where + "expected 'x y c'");
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(tok[2], &used);
      if (used != tok[2].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DomainError(where + "conductance '" + tok[2] + "' is not a number");
    }
    edges.push_back({tok[0], tok[1], c});
  }
  if (origin.empty()) throw DomainError("graph has no 'origin' line");
  if (edges.empty()) throw DomainError("graph has no edges");
  return from_edges(edges, origin);
}

FiniteNetwork FiniteNetwork::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  return parse(in);
}

Eigen::Index FiniteNetwork::index_of(const std::string& id) const {
  for (std::size_t k = 0; k < ids_.size(); ++k) {
    if (ids_[k] == id) return static_cast<Eigen::Index>(k);
  }
  throw DomainError("unknown vertex '" + id + "'");
}

std::size_t FiniteNetwork::edge_count() const {
  std::size_t m = 0;
  for (Eigen::Index x = 0; x < size(); ++x) {
    for (Eigen::Index y = x + 1; y < size(); ++y) m += c_(x, y) > 0.0 ? 1 : 0;
  }
  return m;
}

FiniteNetwork path_graph(int n, double c) {
  if (n < 2) throw DomainError("path needs at least two vertices");
  std::vector<Edge> edges;
  for (int k = 0; k + 1 < n; ++k) edges.push_back({std::to_string(k), std::to_string(k + 1), c});
  return FiniteNetwork::from_edges(edges, "0");
}

FiniteNetwork cycle_graph(int n, double c) {
  if (n < 3) throw DomainError("cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (int k = 0; k < n; ++k) edges.push_back({std::to_string(k), std::to_string((k + 1) % n), c});
  return FiniteNetwork::from_edges(edges, "0");
}

FiniteNetwork random_connected(int n, std::uint64_t seed, double extra_edge_prob) {
  if (n < 2) throw DomainError("random network needs at least two vertices");
  core::SeededRng rng(seed);
  RealMatrix c = RealMatrix::Zero(n, n);
  auto weight = [&] { return 2.0 * (1.0 - rng.uniform()); };  // in (0, 2]
  for (int k = 1; k < n; ++k) {
    const auto parent = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(k)));
    c(k, parent) = c(parent, k) = weight();
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (c(x, y) == 0.0 && rng.uniform() < extra_edge_prob) c(x, y) = c(y, x) = weight();
    }
  }
  std::vector<std::string> ids;
  for (int k = 0; k < n; ++k) ids.push_back(std::to_string(k));
  return FiniteNetwork(std::move(ids), std::move(c), 0);
}

RealVector delta(const FiniteNetwork& net, Eigen::Index x) {
  require_vertex(net, x);
  return RealVector::Unit(net.size(), x);
}

RealVector pin(const FiniteNetwork& net, const RealVector& u) {
  require_function(net, u, "pin");
  return u.array() - u(net.origin());
}

double energy(const FiniteNetwork& net, const RealVector& u, const RealVector& v) {
  require_function(net, u, "energy");
  require_function(net, v, "energy");
  const RealMatrix& c = net.conductance();
  double sum = 0.0;
  for (Eigen::Index x = 0; x < net.size(); ++x) {
    for (Eigen::Index y = x + 1; y < net.size(); ++y) {
      if (c(x, y) != 0.0) sum += c(x, y) * (u(x) - u(y)) * (v(x) - v(y));
    }
  }
  return sum;
}

RealVector laplacian(const FiniteNetwork& net, const RealVector& u) {
  require_function(net, u, "laplacian");
  return net.total_conductance().cwiseProduct(u) - net.conductance() * u;
}

RealMatrix energy_kernels(const FiniteNetwork& net) {
  const auto free = free_vertices(net);
  const Eigen::Index n = net.size();
  RealMatrix out = RealMatrix::Zero(n, n);
  if (free.empty()) return out;
  const Eigen::LDLT<RealMatrix> ldlt(grounded(net, free));
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-14) {
    throw NumericalError("grounded Laplacian is singular; the network is inconsistent");
  }
  // Grounded system: the delta_o term only enters at the pinned origin row.
  const RealMatrix sol = ldlt.solve(RealMatrix::Identity(static_cast<Eigen::Index>(free.size()),
                                                         static_cast<Eigen::Index>(free.size())));
  for (std::size_t j = 0; j < free.size(); ++j) {
    for (std::size_t i = 0; i < free.size(); ++i) {
      out(free[i], free[j]) = sol(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

RealVector energy_kernel(const FiniteNetwork& net, Eigen::Index x) {
  require_vertex(net, x);
  if (x == net.origin()) return RealVector::Zero(net.size());
  return energy_kernels(net).col(x);
}

RealVector dipole(const FiniteNetwork& net, Eigen::Index x, Eigen::Index y) {
  require_vertex(net, x);
  require_vertex(net, y);
  const RealMatrix v = energy_kernels(net);
  return v.col(x) - v.col(y);
}

double delta_energy_residual(const FiniteNetwork& net) {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < net.size(); ++x) {
    const RealVector d = delta(net, x);
    worst = std::max(worst, std::abs(energy(net, d, d) - net.total_conductance()(x)));
  }
  return worst;
}

double kernel_laplacian_residual(const FiniteNetwork& net) {
  const RealMatrix v = energy_kernels(net);
  double worst = 0.0;
  for (Eigen::Index x = 0; x < net.size(); ++x) {
    const RealVector target = delta(net, x) - delta(net, net.origin());
    worst = std::max(worst, (laplacian(net, v.col(x)) - target).cwiseAbs().maxCoeff());
  }
  return worst;
}

double reproducing_residual(const FiniteNetwork& net) {
  const RealMatrix v = energy_kernels(net);
  const Eigen::Index o = net.origin();
  double worst = 0.0;
  for (Eigen::Index x = 0; x < net.size(); ++x) {
    for (Eigen::Index y = 0; y < net.size(); ++y) {
      const RealVector d = delta(net, y);
      worst = std::max(worst, std::abs(energy(net, v.col(x), d) - (d(x) - d(o))));
      const RealVector vy = v.col(y);
      worst = std::max(worst, std::abs(energy(net, v.col(x), vy) - (vy(x) - vy(o))));
    }
  }
  return worst;
}

double delta_inner_residual(const FiniteNetwork& net) {
  const RealMatrix v = energy_kernels(net);
  double worst = 0.0;
  for (Eigen::Index y = 0; y < net.size(); ++y) {
    const RealVector u = v.col(y);
    const RealVector lu = laplacian(net, u);
    for (Eigen::Index x = 0; x < net.size(); ++x) {
      worst = std::max(worst, std::abs(energy(net, delta(net, x), u) - lu(x)));
    }
  }
  return worst;
}

double pair_K_Delta_check(const FiniteNetwork& net) {
  const RealMatrix v = energy_kernels(net);
  double worst = 0.0;
  for (Eigen::Index x = 0; x < net.size(); ++x) {
    const RealVector u = v.col(x);
    const RealVector lu = laplacian(net, u);
    for (Eigen::Index y = 0; y < net.size(); ++y) {
      const RealVector phi = delta(net, y);
      worst = std::max(worst, std::abs(lu.dot(phi) - energy(net, u, phi)));
    }
  }
  return worst;
}

Vector EnergyCoordinates::to_coords(const FiniteNetwork& net, const RealVector& u) const {
  require_function(net, u, "to_coords");
  RealVector red(static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    red(static_cast<Eigen::Index>(k)) = u(free[k]) - u(net.origin());
  }
  return (r * red).cast<cplx>();
}

RealVector EnergyCoordinates::from_coords(const FiniteNetwork& net, const Vector& c) const {
  if (c.size() != static_cast<Eigen::Index>(free.size())) {
    throw DomainError("from_coords: expected " + std::to_string(free.size()) + " coordinates");
  }
  const RealVector red = r.triangularView<Eigen::Upper>().solve(RealVector(c.real()));
  RealVector u = RealVector::Zero(net.size());
  for (std::size_t k = 0; k < free.size(); ++k) u(free[k]) = red(static_cast<Eigen::Index>(k));
  return u;
}

EnergyCoordinates energy_coordinates(const FiniteNetwork& net) {
  EnergyCoordinates out;
  out.free = free_vertices(net);
  if (out.free.empty()) {
    out.r = RealMatrix(0, 0);
    return out;
  }
  const Eigen::LLT<RealMatrix> llt(grounded(net, out.free));
  if (llt.info() != Eigen::Success) {
    throw NumericalError("grounded Laplacian is not positive definite");
  }
  out.r = llt.matrixU();
  return out;
}

pair::SymmetricPairSpec pair_spec(const FiniteNetwork& net) {
  const EnergyCoordinates ec = energy_coordinates(net);
  const Eigen::Index n = net.size();
  const auto k = static_cast<Eigen::Index>(ec.free.size());
  // K: phi -> R (phi - phi(o)) restricted to free vertices.
  RealMatrix p = RealMatrix::Zero(k, n);
  for (Eigen::Index i = 0; i < k; ++i) {
    p(i, ec.free[static_cast<std::size_t>(i)]) = 1.0;
    p(i, net.origin()) -= 1.0;
  }
  const RealMatrix kmat = ec.r * p;
  // Delta: coords -> Laplacian of the pinned representative.
  RealMatrix lap_free(n, k);
  const RealMatrix full = RealMatrix(net.total_conductance().asDiagonal()) - net.conductance();
  for (Eigen::Index i = 0; i < k; ++i) lap_free.col(i) = full.col(ec.free[static_cast<std::size_t>(i)]);
  const RealMatrix rinv =
      ec.r.triangularView<Eigen::Upper>().solve(RealMatrix::Identity(k, k));
  const RealMatrix dmat = lap_free * rinv;
  return {core::OperatorMatrix(kmat.cast<cplx>()), core::OperatorMatrix(dmat.cast<cplx>())};
}

}  // namespace symp::network
