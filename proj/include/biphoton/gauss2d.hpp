#pragma once

#include <cmath>
#include <complex>

#include "biphoton/specfun.hpp"

namespace hom {

/// Quadratic form of a 2D Gaussian envelope exp(-(d1 x1^2 + d2 x2^2 + p (x1 + x2)^2)).
struct GaussForm {
  double d1 = 0.0;
  double d2 = 0.0;
  double p = 0.0;
};

/// Principal axes of a GaussForm: x = axis_a * t1 / sqrt(mu_a) + axis_b * t2 / sqrt(mu_b),
/// so that the form becomes t1^2 + t2^2.
struct Whitening {
  double ax = 1.0, ay = 0.0;  // unit eigenvector of the larger eigenvalue
  double mu_a = 1.0, mu_b = 1.0;
  double jacobian = 1.0;  // 1 / sqrt(det)
};

Whitening whiten(const GaussForm& form);

/// Integral over the plane of f(x1, x2), where f already contains a Gaussian decay
/// comparable to `form`. Nodes follow a tensor Gauss-Hermite rule along the form's
/// principal axes.
template <class F>
std::complex<double> integrate_plane(const GaussForm& form, int order, F&& f) {
  const auto rule = shared_quadrature(QuadratureKind::gauss_hermite, order);
  const Whitening w = whiten(form);
  const double sa = 1.0 / std::sqrt(w.mu_a), sb = 1.0 / std::sqrt(w.mu_b);
  std::complex<double> total = 0.0;
  for (int i = 0; i < rule->order; ++i) {
    const double ta = rule->nodes[i] * sa;
    std::complex<double> row = 0.0;
    for (int j = 0; j < rule->order; ++j) {
      const double tb = rule->nodes[j] * sb;
      const double x1 = w.ax * ta - w.ay * tb;
      const double x2 = w.ay * ta + w.ax * tb;
      row += rule->scaled_weights[j] * std::complex<double>(f(x1, x2));
    }
    total += rule->scaled_weights[i] * row;
  }
  return total * w.jacobian;
}

}  // namespace hom
