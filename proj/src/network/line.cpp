#include "symp/network/line.hpp"

#include <algorithm>
#include <cmath>

namespace symp::network {

double ConductanceSequence::c(long n) const {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("conductance ratio r must be positive");
  if (kind == LineKind::HalfLine) {
    if (n < 0) throw DomainError("half-line conductance index must be non-negative");
    return std::pow(r, static_cast<double>(n));
  }
  return std::pow(r, static_cast<double>(std::max(n, -n - 1)));
}

FiniteNetwork window_network(const ConductanceSequence& seq, int window) {
  if (window < 1) throw DomainError("window must be at least 1");
  const long lo = seq.kind == LineKind::HalfLine ? 0 : -window;
  const long hi = seq.kind == LineKind::HalfLine ? window : window + 1;
  std::vector<Edge> edges;
  for (long n = lo; n < hi; ++n) {
    edges.push_back({std::to_string(n), std::to_string(n + 1), seq.c(n)});
  }
  return FiniteNetwork::from_edges(edges, "0");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converges: return "CONVERGES";
    case Verdict::Diverges: return "DIVERGES";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

Verdict classify(const DefectRun& run) {
  const auto& e = run.energy;
  const auto& inc = run.increments;
  if (run.overflow) return Verdict::Diverges;
  if (e.empty()) return Verdict::Inconclusive;
  if (e.back() == 0.0) return Verdict::Converges;
  if (e.size() >= 3) {
    const double base = e[2];
    for (double em : e) {
      if (em > run.thresholds.blowup * base) return Verdict::Diverges;
    }
  }
  if (inc.size() < 8) return Verdict::Inconclusive;
  const std::size_t start = inc.size() - inc.size() / 4;
  for (std::size_t n = start; n < inc.size(); ++n) {
    if (inc[n - 1] == 0.0) {
      if (inc[n] != 0.0) return Verdict::Inconclusive;
      continue;
    }
    if (!(inc[n] / inc[n - 1] < run.thresholds.tail_ratio)) return Verdict::Inconclusive;
  }
  if (inc.back() < run.thresholds.stagnation * e.back()) return Verdict::Converges;
  return Verdict::Inconclusive;
}

}  // namespace

DefectRun defect_recurrence(const ConductanceSequence& seq, int nmax, double psi0,
                            const VerdictThresholds& thresholds) {
  if (seq.kind != LineKind::HalfLine) {
    throw DomainError("defect recurrence is defined on the half-line");
  }
  if (nmax < 1) throw DomainError("nmax must be at least 1");
  if (!std::isfinite(psi0)) throw DomainError("psi0 must be finite");
  DefectRun run;
  run.thresholds = thresholds;
  run.psi.push_back(psi0);

  // Carry the edge differences separately: once psi settles they fall below
  // the spacing of doubles near psi and cannot be recovered by subtraction.
  std::vector<double> diff;
  double flux = 0.0;  // c_{n-1} (psi(n) - psi(n-1))
  for (int n = 0; n < nmax; ++n) {
    const double cn = seq.c(n);
    const double psin = run.psi.back();
    if (!std::isfinite(cn)) {
      run.overflow = true;
      break;
    }
    const double d = (flux + psin) / cn;
    const double next = psin + d;
    if (!std::isfinite(next)) {
      run.overflow = true;
      run.psi.push_back(next);
      break;
    }
    run.psi.push_back(next);
    diff.push_back(d);
    flux = cn * d;
    const double inc = cn * d * d;
    run.increments.push_back(inc);
    run.energy.push_back((run.energy.empty() ? 0.0 : run.energy.back()) + inc);
  }

  // Verify Delta psi = -psi at every node with both neighbours computed.
  const std::size_t m = diff.size();
  for (std::size_t n = 0; n < m; ++n) {
    const auto nl = static_cast<long>(n);
    const double p = run.psi[n];
    const double right = -seq.c(nl) * diff[n];
    const double left = n == 0 ? 0.0 : seq.c(nl - 1) * diff[n - 1];
    const double lap = left + right;
    const double scale = std::max(1.0, std::abs(left) + std::abs(right) + std::abs(p));
    const double res = std::abs(lap + p) / scale;
    run.residuals.push_back(res);
    run.max_residual = std::max(run.max_residual, res);
    run.l2_laplacian += lap * lap;
  }
  for (std::size_t n = 0; n <= m && n < run.psi.size(); ++n) run.l2_psi += run.psi[n] * run.psi[n];
  run.verdict = classify(run);
  return run;
}

HarmonicRun harmonic_flux(const ConductanceSequence& seq, double phi, int window) {
  if (seq.kind != LineKind::TwoSided) {
    throw DomainError("constant-flux harmonic functions need the two-sided line");
  }
  if (!(seq.r > 1.0)) {
    throw DomainError("sum of 1/c_n diverges for r <= 1; no finite-energy harmonic function");
  }
  if (window < 1) throw DomainError("window must be at least 1");
  HarmonicRun run;
  run.window = window;
  const std::size_t count = static_cast<std::size_t>(2 * window + 2);
  run.h.assign(count, 0.0);
  // h(0) = 0, walk outward in both directions.
  for (long n = 0; n <= window; ++n) {
    run.h[static_cast<std::size_t>(n + 1 + window)] =
        run.h[static_cast<std::size_t>(n + window)] + phi / seq.c(n);
  }
  for (long n = -1; n >= -window; --n) {
    run.h[static_cast<std::size_t>(n + window)] =
        run.h[static_cast<std::size_t>(n + 1 + window)] - phi / seq.c(n);
  }
  for (long n = -window; n <= window; ++n) run.energy += phi * phi / seq.c(n);
  const double r = seq.r;
  run.tail_bound = phi * phi * (std::pow(r, -(window + 1.0)) + std::pow(r, -1.0 * window)) /
                   (1.0 - 1.0 / r);
  for (long n = -window + 1; n <= window; ++n) {
    const double hn = run.at(n);
    const double lap = seq.c(n - 1) * (hn - run.at(n - 1)) + seq.c(n) * (hn - run.at(n + 1));
    run.max_laplacian = std::max(run.max_laplacian, std::abs(lap));
  }
  return run;
}

RealVector harmonic_values(const HarmonicRun& run) {
  // window_network lists ids in edge order: -window, ..., window+1.
  RealVector out(static_cast<Eigen::Index>(run.h.size()));
  for (std::size_t k = 0; k < run.h.size(); ++k) out(static_cast<Eigen::Index>(k)) = run.h[k];
  return out;
}

RoydenSplit royden_project(const FiniteNetwork& window, const RealVector& u,
                           const RealVector& h, double tail_bound, double tol) {
  const double hh = energy(window, h, h) + tail_bound;
  if (!(hh > tol)) throw DomainError("harmonic direction has zero energy");
  RoydenSplit out;
  out.tail_bound = tail_bound;
  const double uh = energy(window, u, h);
  out.coefficient = uh / hh;
  out.harm = out.coefficient * h;
  out.fin = u - out.harm;
  out.orthogonality = std::abs(uh - out.coefficient * hh);
  return out;
}

RoydenSplit royden_project(const FiniteNetwork& net, const RealVector& u) {
  RoydenSplit out;
  out.fin = u;
  out.harm = RealVector::Zero(u.size());
  energy(net, u, u);  // dimension check
  return out;
}

double harmonic_pairing_check(const FiniteNetwork& net, Eigen::Index x, const RealVector& h) {
  return std::abs(energy(net, delta(net, x) - delta(net, net.origin()), h));
}

}  // namespace symp::network
