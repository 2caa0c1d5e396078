#pragma once

#include <memory>
#include <vector>

namespace hom {

enum class QuadratureKind { gauss_hermite, gauss_legendre };

/// Immutable Gaussian quadrature rule. For Gauss-Hermite the weight function is
/// exp(-x^2); scaled_weights holds w_i * exp(x_i^2) so that integrands which
/// already contain their Gaussian can be summed directly. For Gauss-Legendre
/// scaled_weights equals weights.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
  QuadratureKind kind = QuadratureKind::gauss_hermite;
  int order = 0;
};

inline constexpr int kMaxHermiteOrder = 350;
inline constexpr int kMaxLegendreOrder = 4096;

/// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

/// psi_n(x) = (sqrt(pi) n! 2^n)^(-1/2) H_n(x) exp(-x^2/2), stable for large n and |x|.
double oscillator_eigenfunction(int n, double x);

/// psi_0(x) .. psi_nmax(x) in one pass.
std::vector<double> oscillator_eigenfunctions(int nmax, double x);

/// Associated Laguerre polynomial L_r^(m)(x).
double assoc_laguerre(int r, int m, double x);

/// sqrt(r!/s!) x^((s-r)/2) L_r^(s-r)(x), s = max(p, n), r = min(p, n).
/// The phase i^(s-r) is left to the caller.
double g_polynomial(int p, int n, double x);

/// Modified Bessel function I_0. Throws std::overflow_error past the double range.
double bessel_i0(double x);

/// exp(-|x|) I_0(x), finite for every finite x.
double bessel_i0e(double x);

/// Largest absolute error of the truncated Mehler expansion
///   exp(-(x+y)^2) = sqrt(q) sum_n (-q)^n / (2^n n!) H_n(x) H_n(y) exp(-q^2 (x^2 + y^2))
/// over a 5x5 grid on [-3, 3]^2, truncated once the largest term drops below tail_tol.
/// Valid only for q = (sqrt(5) - 1)/2; other q exercise the failure path.
double mehler_identity_error(double q, double tail_tol = 1e-10);

QuadratureRule make_quadrature(QuadratureKind kind, int order);

/// Process-wide cache over make_quadrature; thread safe.
std::shared_ptr<const QuadratureRule> shared_quadrature(QuadratureKind kind, int order);

}  // namespace hom
