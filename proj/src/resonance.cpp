#include "biphoton/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "biphoton/errors.hpp"
#include "biphoton/symmetry.hpp"
#include "biphoton/units.hpp"

namespace hom {

namespace {

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Root of f on [lo, hi] given a sign change.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double k_at(const SpdcParams& spdc, double beta) {
  return schmidt_number_purity(normalize(spdc, ModulationSpec{ModulationKind::cosine, beta}));
}

}  // namespace

double ds_cosine(const SpdcParams& spdc, double beta) {
  return ds_closed_modulated(normalize(spdc, ModulationSpec{ModulationKind::cosine, beta})).d_s;
}

double epsilon_estimate(const SpdcParams& spdc) {
  const double b0 = beta0(spdc.omega);
  const double a = spdc.sigma1 * spdc.sigma1, b = spdc.sigma2 * spdc.sigma2;
  return std::acos(1.0 - b0 * b0 * (a * b / (a + b)) / 3.0) / kPi;
}

ResonanceReport locate_resonance(const SpdcParams& spdc, int n, bool with_k) {
  if (n < 0) throw DomainError("locate_resonance: order must be non-negative");
  spdc.validate();
  const double b0 = beta0(spdc.omega);
  ResonanceReport r;
  r.order_n = n;
  r.beta_seed = (2.0 * n + 1.0) * b0;
  const double half = std::min(0.1 * r.beta_seed, 0.9 * b0);
  const double lo = r.beta_seed - half, hi = r.beta_seed + half;
  const double tol = b0 * 1e-6;
  auto f = [&](double beta) { return ds_cosine(spdc, beta); };
  r.beta_center = golden_min(f, lo, hi, tol);
  if (r.beta_center - lo < 2.0 * tol || hi - r.beta_center < 2.0 * tol)
    throw ConvergenceError("no D_S minimum inside the bracket around resonance " + std::to_string(n));
  r.ds_at_center = f(r.beta_center);
  r.k0 = schmidt_number_closed(spdc);
  r.k_at_center = with_k ? k_at(spdc, r.beta_center) : r.k0;
  return r;
}

ResonanceReport ds_half_prominence(const SpdcParams& spdc, ResonanceReport r) {
  const double b0 = beta0(spdc.omega);
  auto f = [&](double beta) { return ds_cosine(spdc, beta); };
  const double far = r.beta_center + b0;  // D_S maximum between resonances
  const double level = 0.5 * (f(far) + r.ds_at_center);
  r.ds_half_prominence_beta =
      bisect([&](double b) { return f(b) - level; }, r.beta_center, far, b0 * 1e-10) - r.beta_center;
  return r;
}

ResonanceReport hwhm_ds(const SpdcParams& spdc, ResonanceReport r) {
  if (!(r.ds_at_center < -0.5)) throw DomainError("D_S dip never crosses -1/2 (shallow dip)");
  r = ds_half_prominence(spdc, r);
  const double b0 = beta0(spdc.omega);
  auto f = [&](double beta) { return ds_cosine(spdc, beta) + 0.5; };
  const double bh = bisect(f, r.beta_center, r.beta_center + b0, b0 * 1e-10);
  r.hwhm_beta = bh - r.beta_center;
  r.hwhm_epsilon = r.hwhm_beta * 2.0 * spdc.omega / kPi;
  r.hwhm_delta_l = beta_to_delta_l(r.hwhm_beta);
  return r;
}

ResonanceReport hwhm_k(const SpdcParams& spdc, ResonanceReport r) {
  const double b0 = beta0(spdc.omega);
  const double tol = b0 * 1e-10;
  auto k = [&](double beta) { return k_at(spdc, beta); };
  const double peak = k(r.beta_center);
  r.k_at_center = peak;
  if (!(peak > r.k0 * (1.0 + 1e-6))) throw DomainError("no Schmidt-number peak at the resonance");
  const double level = 0.5 * (r.k0 + peak);
  // step outward until K drops below the half level
  double step = 1e-3 * b0;
  double prev = r.beta_center, cur = r.beta_center + step;
  while (k(cur) >= level) {
    prev = cur;
    step *= 2.0;
    cur = prev + step;
    if (cur - r.beta_center > b0) throw ConvergenceError("Schmidt-number peak does not decay within beta0");
  }
  const double bk = bisect([&](double b) { return k(b) - level; }, prev, cur, tol);
  r.k_hwhm_beta = bk - r.beta_center;
  r.k_hwhm_delta_l = beta_to_delta_l(*r.k_hwhm_beta);
  const double wing_lo = bk, wing_hi = r.beta_center + 0.05 * b0;
  if (wing_hi > wing_lo) {
    const double bw = golden_min(k, wing_lo, wing_hi, 1e-4 * b0);
    r.wing_dip_beta = bw - r.beta_center;
    r.wing_dip_depth = k(bw) - r.k0;
  }
  return r;
}

DsVsKTable ds_vs_k_at_resonance(double sigma1, double sigma2, const std::vector<double>& k_grid, double omega,
                                double slope_threshold) {
  DsVsKTable t;
  t.slope_threshold = slope_threshold;
  const double b0 = beta0(omega);
  for (double k : k_grid) {
    DsVsKRow row;
    row.k = k;
    row.sigma_p = sigma_p_from_k(k, sigma1, sigma2);
    const SpdcParams p{sigma1, sigma2, row.sigma_p, omega, 0.0, 0.0};
    row.ds = ds_cosine(p, b0);
    t.rows.push_back(row);
  }
  const std::size_t n = t.rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (n < 2) break;
    const std::size_t a = i + 1 < n ? i : i - 1;
    t.rows[i].slope = (t.rows[a + 1].ds - t.rows[a].ds) / (t.rows[a + 1].k - t.rows[a].k);
    if (i + 1 < n && t.rows[i + 1].ds > t.rows[i].ds) t.monotone_non_increasing = false;
  }
  for (const auto& row : t.rows) {
    if (std::fabs(row.slope) < slope_threshold) {
      t.knee_k = row.k;
      break;
    }
  }
  return t;
}

std::vector<std::size_t> prominent_extrema(const std::vector<double>& values, ExtremumKind kind,
                                           double min_prominence_fraction) {
  std::vector<std::size_t> out;
  const std::size_t n = values.size();
  if (n < 3) return out;
  const double sign = kind == ExtremumKind::maximum ? 1.0 : -1.0;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = sign * values[i];
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double floor = min_prominence_fraction * (*hi - *lo);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] > v[i - 1] && v[i] > v[i + 1])) continue;
    double left = v[i], right = v[i];
    for (std::size_t j = i; j-- > 0;) {
      if (v[j] > v[i]) break;
      left = std::min(left, v[j]);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[j] > v[i]) break;
      right = std::min(right, v[j]);
    }
    if (v[i] - std::max(left, right) >= floor) out.push_back(i);
  }
  return out;
}

DelayRepresentations from_beta(double beta, double omega) {
  DelayRepresentations d;
  d.beta = beta;
  d.delta_l = beta_to_delta_l(beta);
  const double phase = 2.0 * omega * beta / kPi;
  d.order_n = std::max(0, static_cast<int>(std::lround((phase - 1.0) / 2.0)));
  d.epsilon = phase - (2.0 * d.order_n + 1.0);
  d.lambda_fraction = d.delta_l * omega / (2.0 * kPi * kSpeedOfLight);
  return d;
}

DelayRepresentations from_delta_l(double delta_l, double omega) { return from_beta(delta_l_to_beta(delta_l), omega); }

DelayRepresentations from_epsilon(double epsilon, int n, double omega) {
  DelayRepresentations d = from_beta(kPi * (2.0 * n + 1.0 + epsilon) / (2.0 * omega), omega);
  d.order_n = n;
  d.epsilon = epsilon;
  return d;
}

}  // namespace hom
