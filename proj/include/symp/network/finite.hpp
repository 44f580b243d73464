#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "symp/core/types.hpp"
#include "symp/pair/symmetric_pair.hpp"

namespace symp::network {

struct Edge {
  std::string a;
  std::string b;
  double c = 0.0;
};

/// Connected weighted graph with symmetric conductances and an origin o.
/// Functions on vertices are RealVectors indexed like ids(); energy-space
/// representatives are pinned by u(o) = 0.
class FiniteNetwork {
 public:
  FiniteNetwork(std::vector<std::string> ids, RealMatrix conductance, Eigen::Index origin);

  /// Parallel edges are summed.
  static FiniteNetwork from_edges(const std::vector<Edge>& edges, const std::string& origin);

  /// Text format: one "x y c" edge per line, one "origin x" line, '#' starts
  /// a comment.
  static FiniteNetwork parse(std::istream& in);
  static FiniteNetwork parse_file(const std::string& path);

  Eigen::Index size() const { return static_cast<Eigen::Index>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const RealMatrix& conductance() const { return c_; }
  Eigen::Index origin() const { return origin_; }
  Eigen::Index index_of(const std::string& id) const;
  /// c(x) = sum_y c_xy.
  const RealVector& total_conductance() const { return cx_; }
  std::size_t edge_count() const;

 private:
  std::vector<std::string> ids_;
  RealMatrix c_;
  Eigen::Index origin_;
  RealVector cx_;
};

FiniteNetwork path_graph(int n, double c = 1.0);
FiniteNetwork cycle_graph(int n, double c = 1.0);
/// Random spanning tree plus extra edges, conductances uniform in (0, 2].
FiniteNetwork random_connected(int n, std::uint64_t seed, double extra_edge_prob = 0.15);

RealVector delta(const FiniteNetwork& net, Eigen::Index x);
/// u - u(o).
RealVector pin(const FiniteNetwork& net, const RealVector& u);

/// (1/2) sum_{x,y} c_xy (u(x) - u(y)) (v(x) - v(y)).
double energy(const FiniteNetwork& net, const RealVector& u, const RealVector& v);
/// (Delta u)(x) = sum_y c_xy (u(x) - u(y)).
RealVector laplacian(const FiniteNetwork& net, const RealVector& u);

/// v_x with Delta v_x = delta_x - delta_o and v_x(o) = 0.
RealVector energy_kernel(const FiniteNetwork& net, Eigen::Index x);
/// All kernels as columns, from a single factorization.
RealMatrix energy_kernels(const FiniteNetwork& net);
/// v_x - v_y.
RealVector dipole(const FiniteNetwork& net, Eigen::Index x, Eigen::Index y);

/// max_x |E(delta_x) - c(x)|
double delta_energy_residual(const FiniteNetwork& net);
/// max_x |Delta v_x - (delta_x - delta_o)|
double kernel_laplacian_residual(const FiniteNetwork& net);
/// max |<v_x, u>_E - (u(x) - u(o))| over u in {delta_y} and {v_y}.
double reproducing_residual(const FiniteNetwork& net);
/// max |<delta_x, u>_E - (Delta u)(x)| over u in {v_y}.
double delta_inner_residual(const FiniteNetwork& net);
/// max |<Delta u, phi>_2 - <u, K phi>_E| over u in {v_x}, phi in {delta_y}.
double pair_K_Delta_check(const FiniteNetwork& net);

/// Orthonormal coordinates for the energy space: u -> R (u - u(o)) on the
/// non-origin vertices, where R^T R is the grounded Laplacian.
struct EnergyCoordinates {
  std::vector<Eigen::Index> free;  // non-origin vertices in order
  RealMatrix r;                    // upper-triangular factor

  Vector to_coords(const FiniteNetwork& net, const RealVector& u) const;
  RealVector from_coords(const FiniteNetwork& net, const Vector& c) const;
};
EnergyCoordinates energy_coordinates(const FiniteNetwork& net);

/// (K, Delta) with K : l2 -> H_E the inclusion and Delta : H_E -> l2, both in
/// orthonormal coordinates. H1 = l2 (all vertices), H2 = H_E.
pair::SymmetricPairSpec pair_spec(const FiniteNetwork& net);

}  // namespace symp::network
