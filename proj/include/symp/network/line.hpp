#pragma once

#include <string>
#include <vector>

#include "symp/core/types.hpp"
#include "symp/network/finite.hpp"

namespace symp::network {

enum class LineKind { HalfLine, TwoSided };

/// Conductance c_n on the edge (n, n+1). Geometric rule: c_n = r^n on the
/// half-line, c_n = r^{max(n, -n-1)} on the two-sided line.
struct ConductanceSequence {
  LineKind kind = LineKind::HalfLine;
  double r = 2.0;

  double c(long n) const;
};

/// Path on nodes 0..nmax (half-line) or -window..window+1 (two-sided),
/// origin at node 0, ids are the node numbers.
FiniteNetwork window_network(const ConductanceSequence& seq, int window);

enum class Verdict { Converges, Diverges, Inconclusive };
std::string to_string(Verdict v);

struct VerdictThresholds {
  double tail_ratio = 0.9;
  double blowup = 1e6;
  double stagnation = 1e-12;
};

struct DefectRun {
  std::vector<double> psi;               // psi(0..nmax)
  std::vector<double> residuals;         // |Delta psi + psi| at nodes 0..nmax-1, scaled
  std::vector<double> increments;        // c_n (psi(n+1) - psi(n))^2, n < nmax
  std::vector<double> energy;            // E_m for m = 1..nmax
  double max_residual = 0.0;
  double l2_psi = 0.0;                   // sum of psi(n)^2 over the window
  double l2_laplacian = 0.0;             // sum of (Delta psi)(n)^2 over nodes 0..nmax-1
  bool overflow = false;
  Verdict verdict = Verdict::Inconclusive;
  VerdictThresholds thresholds;
};

/// Forward solve of Delta psi = -psi on the half-line from psi(0) = psi0.
DefectRun defect_recurrence(const ConductanceSequence& seq, int nmax, double psi0 = 1.0,
                            const VerdictThresholds& thresholds = {});

struct HarmonicRun {
  int window = 0;
  std::vector<double> h;       // nodes -window..window+1
  double energy = 0.0;         // phi^2 sum of 1/c_n over window edges
  double tail_bound = 0.0;     // energy carried by edges outside the window
  double max_laplacian = 0.0;  // |Delta h| over interior nodes

  double at(long node) const { return h[static_cast<std::size_t>(node + window)]; }
};

/// Constant-flux harmonic function on the two-sided line: h(0) = 0 and
/// h(n+1) - h(n) = phi / c_n.
HarmonicRun harmonic_flux(const ConductanceSequence& seq, double phi, int window = 60);

struct RoydenSplit {
  RealVector fin;
  RealVector harm;
  double coefficient = 0.0;        // harm = coefficient * h
  double orthogonality = 0.0;      // |<fin, h>_E|
  double tail_bound = 0.0;
};

/// Projection onto the one-dimensional harmonic part spanned by h, with
/// energies computed on the window network.
RoydenSplit royden_project(const FiniteNetwork& window, const RealVector& u,
                           const RealVector& h, double tail_bound = 0.0,
                           double tol = kIdentityTol);
/// On a finite network only constants are harmonic, so Harm = 0.
RoydenSplit royden_project(const FiniteNetwork& net, const RealVector& u);

/// |<delta_x - delta_o, h>_E|, i.e. the energy pairing of Delta_E v_x with h.
double harmonic_pairing_check(const FiniteNetwork& net, Eigen::Index x, const RealVector& h);

/// h as a vertex function of window_network(seq, run.window).
RealVector harmonic_values(const HarmonicRun& run);

}  // namespace symp::network
