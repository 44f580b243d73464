#include "symp/malliavin/gaussian.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace symp::malliavin {

namespace {

void validate_gram(const RealMatrix& g) {
  if (g.rows() != g.cols()) throw DomainError("Gramian must be square");
  if (!g.allFinite()) throw DomainError("Gramian has non-finite entries");
  const double scale = 1.0 + (g.size() ? g.cwiseAbs().maxCoeff() : 0.0);
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("Gramian must be symmetric");
  }
  if (g.size() > 0) {
    const Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (g + g.transpose()),
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-12 * scale) {
      throw DomainError("Gramian must be positive semidefinite");
    }
  }
}

class MomentTable {
 public:
  explicit MomentTable(const RealMatrix& g) : g_(g) {}

  double operator()(std::vector<int> a) {
    const int total = std::accumulate(a.begin(), a.end(), 0);
    if (total == 0) return 1.0;
    if (total % 2 == 1) return 0.0;
    if (const auto it = memo_.find(a); it != memo_.end()) return it->second;
    std::size_t i = 0;
    while (a[i] == 0) ++i;
    // E[x_i x^b] with b = a - e_i, by Gaussian integration by parts.
    std::vector<int> b = a;
    b[i] -= 1;
    double sum = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0 || g_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 0.0) {
        continue;
      }
      std::vector<int> c = b;
      c[j] -= 1;
      sum += g_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * b[j] * (*this)(c);
    }
    memo_.emplace(std::move(a), sum);
    return sum;
  }

 private:
  const RealMatrix& g_;
  std::map<std::vector<int>, double> memo_;
};

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

double gaussian_expectation(const Polynomial& p, const RealMatrix& gram) {
  validate_gram(gram);
  MomentTable moments(gram);
  double total = 0.0;
  for (const auto& m : p) {
    if (static_cast<Eigen::Index>(m.exponents.size()) != gram.rows()) {
      throw DomainError("monomial has " + std::to_string(m.exponents.size()) +
                        " exponents, Gramian has " + std::to_string(gram.rows()) + " variables");
    }
    int deg = 0;
    for (int e : m.exponents) {
      if (e < 0) throw DomainError("monomial exponents must be non-negative");
      deg += e;
    }
    if (deg > kMaxMomentDegree) {
      throw DomainError("monomial degree " + std::to_string(deg) + " exceeds the limit of " +
                        std::to_string(kMaxMomentDegree));
    }
    if (m.coeff != 0.0) total += m.coeff * moments(m.exponents);
  }
  return total;
}

Vector from_polynomial(const ChaosBasis& basis, const Polynomial& p) {
  Vector out = Vector::Zero(basis.size());
  const auto d = static_cast<std::size_t>(basis.d());
  for (const auto& m : p) {
    if (m.exponents.size() != d) {
      throw DomainError("monomial needs exactly " + std::to_string(d) + " exponents");
    }
    // x^n = sum_m n! / (m! (n-2m)! 2^m) H_{n-2m}, slot by slot.
    std::vector<std::pair<MultiIndex, double>> terms{{MultiIndex(d, 0), m.coeff}};
    for (std::size_t i = 0; i < d; ++i) {
      const int n = m.exponents[i];
      if (n < 0) throw DomainError("monomial exponents must be non-negative");
      std::vector<std::pair<MultiIndex, double>> next;
      for (const auto& [alpha, c] : terms) {
        for (int k = 0; 2 * k <= n; ++k) {
          const double w = factorial(n) / (factorial(k) * factorial(n - 2 * k) * std::ldexp(1.0, k));
          MultiIndex beta = alpha;
          beta[i] = n - 2 * k;
          next.emplace_back(std::move(beta), c * w);
        }
      }
      terms = std::move(next);
    }
    for (const auto& [alpha, c] : terms) {
      const Eigen::Index pos = basis.find(alpha);
      if (pos < 0) throw DomainError("polynomial degree exceeds the chaos truncation");
      out(pos) += c;
    }
  }
  return out;
}

OrthonormalFrame gram_schmidt_reduce(const RealMatrix& gram, const RealVector& k, double tol) {
  validate_gram(gram);
  const Eigen::Index n = gram.rows();
  if (k.size() != 0 && k.size() != n) {
    throw DomainError("k must be given by " + std::to_string(n) + " coefficients");
  }
  auto ip = [&](const RealVector& a, const RealVector& b) { return a.dot(gram * b); };

  std::vector<std::pair<int, RealVector>> candidates;
  if (k.size() != 0) candidates.emplace_back(-1, k);
  for (Eigen::Index j = 0; j < n; ++j) {
    candidates.emplace_back(static_cast<int>(j), RealVector::Unit(n, j));
  }

  OrthonormalFrame out;
  std::vector<RealVector> frame;
  for (auto& [label, v] : candidates) {
    const double start = ip(v, v);
    RealVector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& f : frame) r -= ip(f, r) * f;
    }
    const double rest = ip(r, r);
    if (!(start > 0.0) || rest <= tol * start) {
      out.dropped.push_back(label);
      continue;
    }
    frame.push_back(r / std::sqrt(rest));
  }
  const auto rdim = static_cast<Eigen::Index>(frame.size());
  out.change.resize(n, rdim);
  for (Eigen::Index m = 0; m < rdim; ++m) out.change.col(m) = frame[static_cast<std::size_t>(m)];
  out.coords = out.change.transpose() * gram;
  return out;
}

}  // namespace symp::malliavin
