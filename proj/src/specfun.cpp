#include "biphoton/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace hom {

namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);
const double kPiQuarterInv = std::pow(kPi, -0.25);

}  // namespace

double hermite(int n, double x) {
  if (n < 0) throw DomainError("hermite: negative degree");
  if (n == 0) return 1.0;
  double h0 = 1.0, h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

std::vector<double> oscillator_eigenfunctions(int nmax, double x) {
  if (nmax < 0) throw DomainError("oscillator_eigenfunctions: negative degree");
  std::vector<double> out(nmax + 1);
  // psi_k = m_k * exp(scale); m is renormalized whenever it grows large.
  double scale = -0.5 * x * x;
  double m_prev = 0.0, m_cur = kPiQuarterInv;
  auto emit = [&](int k, double m) {
    out[k] = (m == 0.0) ? 0.0 : std::copysign(std::exp(std::log(std::fabs(m)) + scale), m);
  };
  emit(0, m_cur);
  for (int k = 0; k < nmax; ++k) {
    double m_next = std::sqrt(2.0 / (k + 1)) * x * m_cur - std::sqrt(double(k) / (k + 1)) * m_prev;
    m_prev = m_cur;
    m_cur = m_next;
    if (std::fabs(m_cur) > kRescale) {
      m_cur /= kRescale;
      m_prev /= kRescale;
      scale += kLogRescale;
    }
    emit(k + 1, m_cur);
  }
  return out;
}

double oscillator_eigenfunction(int n, double x) {
  return oscillator_eigenfunctions(n, x).back();
}

double assoc_laguerre(int r, int m, double x) {
  if (r < 0 || m < 0) throw DomainError("assoc_laguerre: negative index");
  if (r == 0) return 1.0;
  double l0 = 1.0, l1 = 1.0 + m - x;
  for (int k = 1; k < r; ++k) {
    double l2 = ((2.0 * k + 1.0 + m - x) * l1 - (k + m) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

double g_polynomial(int p, int n, double x) {
  if (p < 0 || n < 0) throw DomainError("g_polynomial: negative index");
  if (!(x >= 0.0)) throw DomainError("g_polynomial: x must be non-negative");
  const int r = std::min(p, n);
  const int d = std::abs(p - n);
  if (x == 0.0) return d == 0 ? 1.0 : 0.0;
  // g_k = sqrt(k!/(k+d)!) x^(d/2) L_k^(d)(x), normalized three-term recurrence in k.
  double g0 = std::exp(-0.5 * std::lgamma(d + 1.0) + 0.5 * d * std::log(x));
  if (r == 0) return g0;
  double g1 = g0 * (1.0 + d - x) / std::sqrt(1.0 + d);
  for (int k = 1; k < r; ++k) {
    double g2 = ((2.0 * k + 1.0 + d - x) * g1 - std::sqrt(k * (k + double(d))) * g0) /
                std::sqrt((k + 1.0) * (k + 1.0 + d));
    g0 = g1;
    g1 = g2;
  }
  return g1;
}

double bessel_i0e(double x) {
  x = std::fabs(x);
  if (!std::isfinite(x)) throw DomainError("bessel_i0e: non-finite argument");
  if (x <= 30.0) {
    const double y = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= y / (double(k) * k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-x);
  }
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

double bessel_i0(double x) {
  x = std::fabs(x);
  const double e = bessel_i0e(x);
  if (x + std::log(e) >= std::log(DBL_MAX)) throw std::overflow_error("bessel_i0: result overflows");
  return x <= 30.0 ? e * std::exp(x) : std::exp(x + std::log(e));
}

double mehler_identity_error(double q, double tail_tol) {
  const double grid[5] = {-3.0, -1.5, 0.0, 1.5, 3.0};
  // terms written with Hermite functions: H_n(x) H_n(y) / (2^n n!) = sqrt(pi) psi_n(x) psi_n(y) e^{(x^2+y^2)/2}
  const int nmax = 4000;
  std::vector<std::vector<double>> psi;
  for (double x : grid) psi.push_back(oscillator_eigenfunctions(nmax, x));
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double x = grid[i], y = grid[j];
      const double env = std::exp(0.5 * (x * x + y * y) - q * q * (x * x + y * y));
      double sum = 0.0, qn = 1.0;
      for (int n = 0; n <= nmax; ++n) {
        const double term = std::sqrt(kPi) * qn * psi[i][n] * psi[j][n] * env;
        sum += term;
        qn *= -q;
        if (n > 10 && std::fabs(qn) * std::sqrt(kPi) * env < tail_tol) break;
      }
      const double lhs = std::exp(-(x + y) * (x + y));
      worst = std::max(worst, std::fabs(std::sqrt(std::fabs(q)) * sum - lhs));
    }
  }
  return worst;
}

namespace {

void symmetrize(std::vector<double>& nodes, std::vector<double>& weights) {
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    double x = 0.5 * (nodes[j] - nodes[i]);
    double w = 0.5 * (weights[i] + weights[j]);
    nodes[i] = -x;
    nodes[j] = x;
    weights[i] = weights[j] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

std::vector<double> tridiagonal_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw QuadratureError("Golub-Welsch eigenvalue solve failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

QuadratureRule hermite_rule(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_hermite;
  rule.order = n;
  rule.nodes = tridiagonal_eigenvalues(diag, sub);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 100; ++it) {
      // Newton on the orthonormal polynomial p_n; p_n' = sqrt(2n) p_{n-1}.
      double p0 = 0.0, p1 = kPiQuarterInv;
      for (int k = 0; k < n; ++k) {
        double p2 = std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(double(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
        if (std::fabs(p1) > kRescale) {
          p1 /= kRescale;
          p0 /= kRescale;
        }
      }
      double step = p1 / (std::sqrt(2.0 * n) * p0);
      x -= step;
      if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(x))) break;
    }
    rule.nodes[i] = x;
    double p0 = 0.0, p1 = kPiQuarterInv;
    double s = 0.0;
    double scale = -0.5 * x * x;
    for (int k = 0; k < n; ++k) {
      s += p1 * p1;
      double p2 = std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(double(k) / (k + 1)) * p0;
      p0 = p1;
      p1 = p2;
      if (std::fabs(p1) > kRescale) {
        p1 /= kRescale;
        p0 /= kRescale;
        s /= kRescale * kRescale;
        scale += kLogRescale;
      }
    }
    // sum_k p_k^2 = s * exp(2 scale); w = exp(-x^2) / sum_k p_k^2.
    rule.scaled_weights[i] = std::exp(-std::log(s) - 2.0 * scale);
    rule.weights[i] = std::exp(-std::log(s) - 2.0 * scale - x * x);
  }
  std::vector<double> xs = rule.nodes;
  symmetrize(rule.nodes, rule.weights);
  symmetrize(xs, rule.scaled_weights);
  return rule;
}

QuadratureRule legendre_rule(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_legendre;
  rule.order = n;
  rule.nodes = tridiagonal_eigenvalues(diag, sub);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double step = p1 / dp;
      x -= step;
      if (std::fabs(step) <= 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < n; ++k) {
      double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  symmetrize(rule.nodes, rule.weights);
  rule.scaled_weights = rule.weights;
  return rule;
}

}  // namespace

QuadratureRule make_quadrature(QuadratureKind kind, int order) {
  switch (kind) {
    case QuadratureKind::gauss_hermite:
      if (order < 2 || order > kMaxHermiteOrder)
        throw DomainError("make_quadrature: Gauss-Hermite order must be in [2, " +
                          std::to_string(kMaxHermiteOrder) + "]");
      return hermite_rule(order);
    case QuadratureKind::gauss_legendre:
      if (order < 2 || order > kMaxLegendreOrder)
        throw DomainError("make_quadrature: Gauss-Legendre order must be in [2, " +
                          std::to_string(kMaxLegendreOrder) + "]");
      return legendre_rule(order);
  }
  throw DomainError("make_quadrature: unsupported kind");
}

std::shared_ptr<const QuadratureRule> shared_quadrature(QuadratureKind kind, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const QuadratureRule>> cache;
  const auto key = std::make_pair(static_cast<int>(kind), order);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(make_quadrature(kind, order));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, rule).first->second;
}

}  // namespace hom
