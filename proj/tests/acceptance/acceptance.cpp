// Acceptance criteria 1-10. One line per criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../support/poly_oracle.hpp"
#include "../support/random.hpp"
#include "symp/core/linalg.hpp"
#include "symp/malliavin/chaos.hpp"
#include "symp/malliavin/checks.hpp"
#include "symp/modular/modular.hpp"
#include "symp/network/finite.hpp"
#include "symp/network/line.hpp"
#include "symp/pair/symmetric_pair.hpp"

using namespace symp;
using core::max_abs;
using core::OperatorMatrix;

namespace {

// Pinned tolerances.
constexpr double kPairTol = 1e-10;
constexpr double kLstarTol = 1e-12;
constexpr double kFlipTol = 1e-9;
constexpr double kChaosTol = 1e-10;
constexpr double kExpInnerTol = 1e-6;
constexpr double kExpNumberTol = 1e-4;
constexpr double kSpectrumTol = 1e-10;
constexpr double kJTol = 1e-12;
constexpr double kSJDeltaTol = 1e-10;
constexpr double kJMJTol = 1e-10;
constexpr double kFlowTol = 1e-9;
constexpr double kMaximalTol = 1e-10;
constexpr double kTracialTol = 1e-14;
constexpr double kNetworkTol = 1e-12;
constexpr double kRecurrenceTol = 1e-12;
constexpr double kEnergyTol = 1e-12;
constexpr double kRoydenTol = 1e-10;
constexpr double kPairingTol = 1e-14;
constexpr double kPolarTol = 1e-10;
constexpr double kSpectraTol = 1e-9;
constexpr double kCayleyTol = 1e-10;
constexpr double kInvolutionTol = 1e-12;
constexpr double kCriterion1Seconds = 10.0;
constexpr double kSuiteSeconds = 60.0;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Collects sub-checks; the criterion passes when all of them do.
class Criterion {
 public:
  explicit Criterion(int id) : id_(id) {}

  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void below(double value, double tol, const std::string& what) {
    require(std::isfinite(value) && value < tol, what + " = " + sci(value) + " >= " + sci(tol));
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  bool report() const {
    std::string line = "criterion " + std::to_string(id_) + ": " + (failures_.empty() ? "PASS" : "FAIL");
    if (!notes_.empty()) line += "  " + notes_;
    for (const auto& f : failures_) line += "  [" + f + "]";
    std::puts(line.c_str());
    return failures_.empty();
  }

 private:
  int id_;
  std::vector<std::string> failures_;
  std::string notes_;
};

// ---- shared fixtures ---------------------------------------------------------

struct NamedPair {
  std::string name;
  pair::SymmetricPairSpec spec;
};

std::vector<network::FiniteNetwork> networks() {
  std::vector<network::FiniteNetwork> nets;
  nets.push_back(network::FiniteNetwork::from_edges({{"o", "a", 1.0}, {"a", "b", 1.0}}, "o"));
  nets.push_back(network::cycle_graph(4));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    nets.push_back(network::random_connected(5 + static_cast<int>((seed * 7919) % 46), seed));
  }
  return nets;
}

std::vector<NamedPair> all_pairs() {
  std::vector<NamedPair> out;
  for (int n = 1; n <= 8; ++n) out.push_back({"hermite N=" + std::to_string(n), malliavin::hermite_pair(n)});
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 6; ++n) {
      out.push_back({"(T,S) d=" + std::to_string(d) + " N=" + std::to_string(n),
                     malliavin::ts_pair(malliavin::ChaosBasis(d, n))});
    }
  }
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto sf = modular::standard_form(n, modular::random_density(n, seed));
      const auto md = modular::modular_data(sf.alg, sf.commutant, sf.xi);
      out.push_back({"(S,F) n=" + std::to_string(n) + " seed=" + std::to_string(seed), {md.s, md.f}});
    }
  }
  int k = 0;
  for (const auto& net : networks()) {
    out.push_back({"(K,Delta) #" + std::to_string(k++), network::pair_spec(net)});
  }
  return out;
}

// ---- criteria ----------------------------------------------------------------

bool criterion1(const std::vector<NamedPair>& pairs, double build_seconds) {
  Criterion c(1);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& p : pairs) {
    const double r = pair::check_pair(p.spec).residual;
    worst = std::max(worst, r);
    c.below(r, kPairTol, p.name + " pair residual");
  }
  double kd = 0.0;
  for (const auto& net : networks()) kd = std::max(kd, network::pair_K_Delta_check(net));
  c.below(kd, kPairTol, "pair_K_Delta_check");
  const double secs = build_seconds + seconds_since(t0);
  c.below(secs, kCriterion1Seconds, "runtime (s)");
  c.note(std::to_string(pairs.size()) + " pairs, max residual " + sci(std::max(worst, kd)) +
         ", " + sci(secs) + " s");
  return c.report();
}

bool criterion2(const std::vector<NamedPair>& pairs) {
  Criterion c(2);
  for (const auto& p : pairs) {
    const double r = pair::check_pair(p.spec).residual;
    const auto l = pair::build_L(p.spec);
    const double defect = pair::symmetry_defect(l);
    c.require(defect <= 2.0 * r, p.name + ": |L - L*| = " + sci(defect) + " > 2 x " + sci(r));
    c.below(core::max_abs_diff(pair::build_Lstar(p.spec).l, core::adjoint(l.l)), kLstarTol,
            p.name + " build_Lstar vs adjoint");
    try {
      const auto d = pair::deficiency(p.spec);
      c.require(d.n_plus == 0 && d.n_minus == 0,
                p.name + ": deficiency (" + std::to_string(d.n_plus) + "," +
                    std::to_string(d.n_minus) + ")");
    } catch (const std::exception& e) {
      c.require(false, p.name + ": deficiency threw " + e.what());
    }
  }
  // Non-symmetric probes A = B = iX, X = X^H with X^2 having eigenvalue 1,
  // so A*B* = -X^2 has eigenvalue -1 and the defect spaces are nonzero.
  testing::Rng rng(2024);
  std::size_t probes = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(2, 6);
    const Matrix x0 = rng.complex_matrix(n, n);
    Matrix x = x0 + x0.adjoint();
    const auto es = core::eigensystem(OperatorMatrix(x));
    RealVector lam = Eigen::Map<const RealVector>(es.values.data(), n);
    lam /= lam.cwiseAbs().maxCoeff();
    lam(n - 1) = 1.0;
    x = es.vectors * lam.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    const pair::SymmetricPairSpec spec(OperatorMatrix(Matrix(kI * x)), OperatorMatrix(Matrix(kI * x)));
    const auto d = pair::adjoint_eigenspaces(spec);
    c.require(d.n_plus >= 1 && d.n_plus == d.n_minus, "probe " + std::to_string(trial) + " indices");
    const OperatorMatrix lstar = pair::build_Lstar(spec).l;
    for (const auto& v : d.def_plus) {
      const Vector f = pair::defect_flip(v, n, n);
      worst = std::max(worst, (lstar.apply(f) + kI * f).norm());
      worst = std::max(worst, core::distance_to_span(f, d.def_minus));
      ++probes;
    }
  }
  c.below(worst, kFlipTol, "defect_flip eigen-residual");
  c.note(std::to_string(pairs.size()) + " pairs; " + std::to_string(probes) +
         " flipped defect vectors, max residual " + sci(worst));
  return c.report();
}

bool criterion3() {
  Criterion c(3);
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 6; ++n) {
      worst = std::max(worst, malliavin::number_operator_residual(malliavin::ChaosBasis(d, n)));
    }
  }
  c.below(worst, kChaosTol, "|T*T - level multiplication|");
  // Oracle: <T H_a, T H_b> = sum_i E[d_i H_a d_i H_b] by pairing enumeration.
  double oracle = 0.0;
  std::size_t pairs = 0;
  for (int d = 1; d <= 3; ++d) {
    const malliavin::ChaosBasis b(d, 5);
    const RealMatrix gram = RealMatrix::Identity(d, d);
    const auto low = b.up_to_degree(4);
    for (Eigen::Index i : low) {
      const auto ti = malliavin::T_apply(b, Vector::Unit(b.size(), i));
      const auto hi = testing::hermite(b.index(i));
      for (Eigen::Index j : low) {
        if (j < i) continue;
        const auto tj = malliavin::T_apply(b, Vector::Unit(b.size(), j));
        const auto hj = testing::hermite(b.index(j));
        double chaos = 0.0, moment = 0.0;
        for (int s = 0; s < d; ++s) {
          const auto ss = static_cast<std::size_t>(s);
          chaos += b.inner(ti[ss], tj[ss]).real();
          moment += testing::pairing_expectation(
              testing::multiply(testing::derivative(hi, ss), testing::derivative(hj, ss)), gram);
        }
        oracle = std::max(oracle, std::abs(chaos - moment) / (1.0 + std::abs(moment)));
        ++pairs;
      }
    }
  }
  c.below(oracle, kChaosTol, "Isserlis oracle");
  c.note("level residual " + sci(worst) + ", Isserlis oracle " + sci(oracle) + " over " +
         std::to_string(pairs) + " pairs");
  return c.report();
}

bool criterion4() {
  Criterion c(4);
  testing::Rng rng(4);
  double tk = 0.0, der = 0.0;
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 6; ++n) {
      const malliavin::ChaosBasis b(d, n);
      const auto dim = malliavin::kernel_dimension(b);
      c.require(dim == 1, "ker T dim " + std::to_string(dim) + " at d=" + std::to_string(d) +
                              " N=" + std::to_string(n));
      for (int trial = 0; trial < 3; ++trial) {
        RealVector k(d);
        for (int i = 0; i < d; ++i) k(i) = rng.uniform();
        tk = std::max(tk, malliavin::tk_sum_residual(b, k));
      }
      der = std::max(der, malliavin::derivation_residual(b));
    }
  }
  c.below(tk, kChaosTol, "T_k + T_k* - M_Phi(k)");
  c.below(der, kChaosTol, "derivation");
  c.note("ker T dim 1 for d<=3 N<=6; T_k sum " + sci(tk) + ", derivation " + sci(der));
  return c.report();
}

bool criterion5() {
  Criterion c(5);
  testing::Rng rng(5);
  double inner = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const malliavin::ChaosBasis b(d, 12);
    for (int trial = 0; trial < 10; ++trial) {
      RealVector k1(d), k2(d);
      for (int i = 0; i < d; ++i) {
        k1(i) = rng.uniform();
        k2(i) = rng.uniform();
      }
      k1 *= rng.uniform(0.0, 1.0) / k1.norm();
      k2 *= rng.uniform(0.0, 1.0) / k2.norm();
      inner = std::max(inner, malliavin::exp_inner_residual(b, k1, k2));
    }
    // The extreme case |k1| = |k2| = 1 along the same direction.
    const RealVector unit = RealVector::Unit(d, 0);
    inner = std::max(inner, malliavin::exp_inner_residual(b, unit, unit));
  }
  c.below(inner, kExpInnerTol, "<e^k1, e^k2> - e^<k1,k2>");

  double at12 = 0.0;
  for (int d = 1; d <= 2; ++d) {
    RealVector k = RealVector::Ones(d);
    k *= 0.5 / k.norm();
    double last = INFINITY;
    for (int n = 4; n <= 12; n += 2) {
      const double r = malliavin::exp_number_residual(malliavin::ChaosBasis(d, n), k);
      c.require(r < last, "exp_number residual not decreasing at d=" + std::to_string(d) +
                              " N=" + std::to_string(n));
      last = r;
    }
    at12 = std::max(at12, last);
  }
  c.below(at12, kExpNumberTol, "exp_number residual at N=12");
  c.note("exp inner " + sci(inner) + ", number operator on e^Phi(k) at N=12 " + sci(at12));
  return c.report();
}

// h -> rho h rho^{-1} on column-major vec(h), built entry by entry.
Matrix conjugation_action(const Matrix& rho) {
  const Eigen::Index n = rho.rows();
  const Matrix inv = rho.inverse();
  Matrix out(n * n, n * n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    Matrix h = Matrix::Zero(n, n);
    h(k % n, k / n) = 1.0;
    const Matrix g = rho * h * inv;
    out.col(k) = Eigen::Map<const Vector>(g.data(), n * n);
  }
  return out;
}

bool criterion6() {
  Criterion c(6);
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  const auto sf = modular::standard_form(2, rho);
  const auto md = modular::modular_data(sf.alg, sf.commutant, sf.xi);

  // Required spectrum, and the independent conjugation oracle.
  const std::vector<double> want{3.0 / 7.0, 1.0, 1.0, 7.0 / 3.0};
  Eigen::ComplexEigenSolver<Matrix> ces(conjugation_action(rho));
  std::vector<double> oracle;
  for (Eigen::Index k = 0; k < 4; ++k) oracle.push_back(ces.eigenvalues()(k).real());
  std::sort(oracle.begin(), oracle.end());
  double oracle_dev = 0.0;
  for (std::size_t k = 0; k < 4; ++k) oracle_dev = std::max(oracle_dev, std::abs(oracle[k] - want[k]));
  c.below(oracle_dev, kSpectrumTol, "conjugation oracle vs {3/7,1,1,7/3}");

  const auto got = core::spectrum(md.delta);
  double dev = 0.0;
  for (std::size_t k = 0; k < 4; ++k) dev = std::max(dev, std::abs(got[k] - want[k]));
  std::ostringstream spec;
  spec.precision(6);
  spec << "spectrum(Delta) = {" << got[0] << ", " << got[1] << ", " << got[2] << ", " << got[3] << "}";
  c.below(dev, kSpectrumTol, spec.str() + " vs {3/7,1,1,7/3}, deviation");

  const Matrix& j = md.j.matrix();
  c.below(max_abs(j.adjoint() * j - Matrix::Identity(4, 4)), kJTol, "J isometric");
  c.below(max_abs(core::compose(md.j, md.j).matrix() - Matrix::Identity(4, 4)), kJTol, "J involutive");
  c.below(core::max_abs_diff(core::compose(md.j, md.delta), md.s), kSJDeltaTol, "|S - J Delta|");
  const auto cr = modular::check_commutation(md.j, md.s, sf.alg, sf.commutant);
  c.below(cr.jmj_residual, kJMJTol, "JMJ in M'");
  c.require(cr.jmj_rank == cr.commutant_dim, "JMJ spans M'");
  c.below(modular::modular_flow_check(md.delta, sf.alg, {0.5, 1.0, std::numbers::pi}), kFlowTol,
          "modular flow");
  const auto mc = modular::maximality_check(md.s, md.f);
  c.below(mc.f_star_minus_s, kMaximalTol, "|S - F*|");
  c.require(mc.maximal, "maximality_check");

  const auto tr = modular::standard_form(2, modular::tracial_density(2));
  const auto mt = modular::modular_data(tr.alg, tr.commutant, tr.xi);
  c.below(max_abs(mt.delta.matrix() - Matrix::Identity(4, 4)), kTracialTol, "tracial Delta - I");
  // The *-operation on column-major vec(h): vec(h*) = P conj(vec(h)).
  Matrix star = Matrix::Zero(4, 4);
  for (Eigen::Index r = 0; r < 2; ++r) {
    for (Eigen::Index s = 0; s < 2; ++s) star(r * 2 + s, s * 2 + r) = 1.0;
  }
  c.require(mt.j.linearity() == core::Linearity::ConjugateLinear, "tracial J conjugate-linear");
  c.below(max_abs(mt.j.matrix() - star), kTracialTol, "tracial J - *");
  c.note(spec.str() + ", oracle {" + sci(oracle[0]) + ", .., " + sci(oracle[3]) + "}");
  return c.report();
}

// Kernel via the pseudo-inverse of the full Laplacian, pinned at the origin.
RealVector kernel_oracle(const network::FiniteNetwork& net, Eigen::Index x) {
  const RealMatrix lap = RealMatrix(net.total_conductance().asDiagonal()) - net.conductance();
  const RealVector v = lap.completeOrthogonalDecomposition().pseudoInverse() *
                       (RealVector::Unit(net.size(), x) - RealVector::Unit(net.size(), net.origin()));
  return v.array() - v(net.origin());
}

bool criterion7() {
  Criterion c(7);
  double e = 0.0, k = 0.0, rep = 0.0, di = 0.0, orc = 0.0;
  std::size_t count = 0;
  for (const auto& net : networks()) {
    e = std::max(e, network::delta_energy_residual(net));
    k = std::max(k, network::kernel_laplacian_residual(net));
    rep = std::max(rep, network::reproducing_residual(net));
    di = std::max(di, network::delta_inner_residual(net));
    const RealMatrix v = network::energy_kernels(net);
    for (Eigen::Index x = 0; x < net.size(); ++x) {
      orc = std::max(orc, (v.col(x) - kernel_oracle(net, x)).cwiseAbs().maxCoeff());
    }
    ++count;
  }
  c.below(e, kNetworkTol, "E(delta_x) - c(x)");
  c.below(k, kNetworkTol, "Delta v_x - (delta_x - delta_o)");
  c.below(rep, kNetworkTol, "reproducing");
  c.below(di, kNetworkTol, "<delta_x, u>_E - Delta u(x)");
  c.below(orc, 1e-9, "kernel vs pseudo-inverse oracle");
  c.note(std::to_string(count) + " networks; max residuals " + sci(e) + ", " + sci(k) + ", " +
         sci(rep) + ", " + sci(di) + "; oracle " + sci(orc));
  return c.report();
}

bool criterion8() {
  Criterion c(8);
  const int nmax = 80;
  for (double r : {2.0, 3.0}) {
    const auto run = network::defect_recurrence({network::LineKind::HalfLine, r}, nmax);
    c.require(run.verdict == network::Verdict::Converges,
              "r=" + sci(r) + " verdict " + network::to_string(run.verdict));
    c.below(run.max_residual, kRecurrenceTol, "r=" + sci(r) + " recurrence residual");
  }
  const auto two = network::defect_recurrence({network::LineKind::HalfLine, 2.0}, nmax);
  const double first[] = {1.0, 2.0, 3.5, 5.125};
  for (std::size_t n = 0; n < 4; ++n) {
    c.require(two.psi[n] == first[n], "psi(" + std::to_string(n) + ") = " + sci(two.psi[n]));
  }
  const auto flat = network::defect_recurrence({network::LineKind::HalfLine, 1.0}, nmax);
  c.require(flat.verdict == network::Verdict::Diverges, "c=1 verdict " + network::to_string(flat.verdict));
  c.require(flat.psi[3] == 13.0, "c=1 psi(3) = " + sci(flat.psi[3]));
  for (std::size_t n = 1; n < two.psi.size(); ++n) {
    if (!(two.psi[n] >= two.psi[n - 1])) c.require(false, "psi decreasing at " + std::to_string(n));
  }
  c.note("r=2,3 CONVERGES, c=1 DIVERGES; r=2 energy " + sci(two.energy.back()) +
         ", residual " + sci(two.max_residual));
  return c.report();
}

bool criterion9() {
  Criterion c(9);
  const network::ConductanceSequence seq{network::LineKind::TwoSided, 2.0};
  const int w = 40;
  for (double phi : {1.0, 0.5, 3.0}) {
    const auto run = network::harmonic_flux(seq, phi, w);
    c.below(std::abs(run.energy + run.tail_bound - 4.0 * phi * phi), kEnergyTol,
            "energy(h) - 4 phi^2 at phi=" + sci(phi));
  }
  const auto run = network::harmonic_flux(seq, 1.0, w);
  const auto net = network::window_network(seq, w);
  const RealVector h = network::harmonic_values(run);
  const Eigen::Index zero = net.index_of("0");
  const auto s0 = network::royden_project(net, RealVector::Unit(net.size(), zero), h, run.tail_bound);
  c.below(s0.harm.cwiseAbs().maxCoeff(), kRoydenTol, "harm part of delta_0");
  RealVector v1 = RealVector::Zero(net.size());
  for (long n = 1; n <= w + 1; ++n) v1(net.index_of(std::to_string(n))) = 1.0;
  const auto s1 = network::royden_project(net, v1, h, run.tail_bound);
  c.below(std::abs(s1.coefficient - 0.25), kRoydenTol, "harm coefficient of v_1 - 1/4");
  double pairing = 0.0;
  for (long x = -w + 1; x <= w; ++x) {
    pairing = std::max(pairing, network::harmonic_pairing_check(net, net.index_of(std::to_string(x)), h));
  }
  c.below(pairing, kPairingTol, "<Delta_E v_x, h>_E");
  c.note("energy " + sci(run.energy + run.tail_bound) + ", v_1 coefficient " + sci(s1.coefficient) +
         ", pairing " + sci(pairing));
  return c.report();
}

bool criterion10(Clock::time_point suite_start) {
  Criterion c(10);
  testing::Rng rng(10);
  double polar = 0.0, spectra = 0.0, unitary = 0.0, invol = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int r = rng.integer(1, 20);
    const int s = rng.integer(1, 20);
    Matrix m = rng.complex_matrix(r, s);
    if (trial % 5 == 0 && s > 1) m.col(0) = m.col(1);
    const auto pd = core::polar_decompose(OperatorMatrix(m));
    polar = std::max(polar, max_abs(m - pd.v.matrix.matrix() * pd.p.matrix()) / (1.0 + max_abs(m)));

    auto nonzero = [](std::vector<double> v) {
      const double top = v.empty() ? 0.0 : std::abs(v.back());
      std::erase_if(v, [&](double x) { return std::abs(x) <= 1e-9 * std::max(1.0, top); });
      return v;
    };
    const auto s1 = nonzero(core::spectrum(OperatorMatrix(Matrix(m.adjoint() * m))));
    const auto s2 = nonzero(core::spectrum(OperatorMatrix(Matrix(m * m.adjoint()))));
    if (s1.size() != s2.size()) {
      spectra = INFINITY;
    } else {
      for (std::size_t k = 0; k < s1.size(); ++k) spectra = std::max(spectra, std::abs(s1[k] - s2[k]));
    }

    const Matrix sq = rng.complex_matrix(r, r);
    const Matrix herm = sq + sq.adjoint();
    const Matrix cay = core::cayley(OperatorMatrix(herm)).matrix();
    unitary = std::max(unitary, max_abs(cay.adjoint() * cay - Matrix::Identity(r, r)));

    for (auto lin : {core::Linearity::Linear, core::Linearity::ConjugateLinear}) {
      const OperatorMatrix t(m, lin);
      invol = std::max(invol, core::max_abs_diff(core::adjoint(core::adjoint(t)), t));
    }
  }
  c.below(polar, kPolarTol, "polar reconstruction");
  c.below(spectra, kSpectraTol, "nonzero spectra of T*T and TT*");
  c.below(unitary, kCayleyTol, "Cayley unitarity");
  c.below(invol, kInvolutionTol, "adjoint involution");
  const double secs = seconds_since(suite_start);
  c.below(secs, kSuiteSeconds, "suite wall time (s)");
  c.note("50 matrices up to 20x20; polar " + sci(polar) + ", spectra " + sci(spectra) +
         ", Cayley " + sci(unitary) + ", involution " + sci(invol) + "; suite " + sci(secs) + " s");
  return c.report();
}

}  // namespace

int main() {
  const auto start = Clock::now();
  bool ok = true;
  auto guarded = [&](int id, const std::function<bool()>& f) {
    try {
      ok = f() && ok;
    } catch (const std::exception& e) {
      std::printf("criterion %d: FAIL  [exception: %s]\n", id, e.what());
      ok = false;
    }
  };
  std::vector<NamedPair> pairs;
  double build_seconds = 0.0;
  guarded(1, [&] {
    const auto t0 = Clock::now();
    pairs = all_pairs();
    build_seconds = seconds_since(t0);
    return criterion1(pairs, build_seconds);
  });
  guarded(2, [&] { return criterion2(pairs); });
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, [&] { return criterion10(start); });
  return ok ? 0 : 1;
}
