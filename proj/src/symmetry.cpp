#include "biphoton/symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace hom {

std::string_view to_string(SymmetryMethod m) {
  switch (m) {
    case SymmetryMethod::closed_spdc: return "closed_spdc";
    case SymmetryMethod::closed_modulated: return "closed_modulated";
    case SymmetryMethod::parity_series: return "parity_series";
    case SymmetryMethod::quadrature: return "quadrature";
    case SymmetryMethod::finite_gate: return "finite_gate";
  }
  return "unknown";
}

SymmetryResult make_symmetry_result(double d_s, SymmetryMethod method) {
  if (!std::isfinite(d_s)) throw QuadratureError("symmetry degree is not finite");
  SymmetryResult r;
  r.method = method;
  if (std::fabs(d_s) > 1.0 + 1e-6)
    throw QuadratureError("symmetry degree " + std::to_string(d_s) + " outside [-1, 1]; increase the quadrature order");
  if (std::fabs(d_s) > 1.0) {
    d_s = std::clamp(d_s, -1.0, 1.0);
    r.clamped = true;
  }
  r.d_s = d_s;
  r.p_2c = 0.5 * (1.0 - d_s);
  return r;
}

SymmetryResult ds_quadrature_of(const std::function<std::complex<double>(double, double)>& amplitude,
                                const GaussForm& intensity, const GaussForm& exchange, int order) {
  const double norm =
      integrate_plane(intensity, order, [&](double x1, double x2) { return std::norm(amplitude(x1, x2)); }).real();
  const std::complex<double> overlap = integrate_plane(exchange, order, [&](double x1, double x2) {
    return amplitude(x1, x2) * std::conj(amplitude(x2, x1));
  });
  if (!(norm > 0.0)) throw QuadratureError("state norm vanishes under quadrature");
  const std::complex<double> d = overlap / norm;
  if (std::fabs(d.imag()) > 1e-9)
    throw QuadratureError("imaginary residue " + std::to_string(d.imag()) + " in D_S; increase the quadrature order");
  return make_symmetry_result(d.real(), SymmetryMethod::quadrature);
}

SymmetryResult ds_quadrature(const BiphotonState& state, int order) {
  const ScaledParams& s = state.scaled();
  return ds_quadrature_of([&](double x1, double x2) { return state.raw_amplitude_scaled(x1, x2); },
                          intensity_form(s), exchange_form(s), order);
}

namespace {

// Closed form for the unmodulated state in scaled units.
double closed_spdc_scaled(const ScaledParams& s) {
  const double r2sq = s.r2 * s.r2;
  const double sum = 1.0 + r2sq;
  const double gauss = std::exp(-s.delta() * s.delta() * r2sq / sum);
  if (s.separable) return 2.0 * s.r2 / sum * gauss;
  const double rpsq = s.rp * s.rp;
  return 2.0 * s.r2 * std::sqrt(sum + rpsq) / (std::sqrt(sum) * std::sqrt(rpsq * sum + 4.0 * r2sq)) * gauss;
}

}  // namespace

SymmetryResult ds_closed_spdc(const SpdcParams& spdc) {
  return make_symmetry_result(closed_spdc_scaled(to_scaled(spdc, ModulationSpec{})), SymmetryMethod::closed_spdc);
}

SymmetryResult ds_closed_modulated(const BiphotonState& state) {
  const ScaledParams& s = state.scaled();
  if (s.kind != ModulationKind::cosine) throw DomainError("ds_closed_modulated requires cosine modulation");
  const double r2sq = s.r2 * s.r2;
  const double xi_sq = r2sq / (1.0 + r2sq);
  // gamma^2 sigma_p^2 tends to xi^2 in the separable limit
  const double gp_sq = s.separable ? xi_sq : r2sq * s.rp * s.rp / ((1.0 + r2sq) * s.rp * s.rp + 4.0 * r2sq);
  const double b2 = s.b * s.b;
  const double c = std::cos(s.b_omega);
  const double c2 = std::cos(2.0 * s.b_omega);
  const double denom = 2.0 * c * c + c2 * std::expm1(-b2 * alpha_sq_scaled(s));
  if (!(denom >= 1e-12)) throw DegenerateStateError("cosine modulation annihilates the state", state.modulation().beta);
  const double sh = std::sinh(s.b * s.delta() * xi_sq);
  const double numer = 2.0 * c * c + c2 * std::expm1(-b2 * gp_sq) + std::expm1(-b2 * xi_sq) +
                       std::exp(-b2 * xi_sq) * 2.0 * sh * sh;
  return make_symmetry_result(closed_spdc_scaled(s) * numer / denom, SymmetryMethod::closed_modulated);
}

SymmetryResult ds_parity_series(const BiphotonState& state, double tol) {
  const ScaledParams& s = state.scaled();
  if (s.separable) throw DomainError("ds_parity_series requires finite sigma_p");
  if (!(tol > 0.0)) throw DomainError("ds_parity_series: tol must be positive");
  const double q = 0.5 * (std::sqrt(5.0) - 1.0);
  const double rp = s.rp;
  const double a = q * q + 0.5 * rp * rp * (1.0 + 1.0 / (s.r2 * s.r2));
  double bb = 1.0 / a - 1.0;
  if (std::fabs(bb) < 1e-12) bb = -1e-12;
  const double delta = s.t1 - s.t2;

  // phi12 written as sum_j coef_j exp(i k_j u), u = x / rp
  struct Component {
    std::complex<double> coef;
    double k;
  };
  std::vector<Component> comps;
  const std::complex<double> ep = std::polar(1.0, s.b_omega), em = std::polar(1.0, -s.b_omega);
  const std::complex<double> two_i(0.0, 2.0);
  switch (s.kind) {
    case ModulationKind::none:
      comps = {{1.0, rp * delta}};
      break;
    case ModulationKind::cosine:
      comps = {{0.5 * ep, rp * (delta + s.b)}, {0.5 * em, rp * (delta - s.b)}};
      break;
    case ModulationKind::sine:
      comps = {{ep / two_i, rp * (delta + s.b)}, {-em / two_i, rp * (delta - s.b)}};
      break;
  }
  const std::size_t m = comps.size();
  std::vector<std::complex<double>> amp(m);
  std::vector<double> cj(m), u(m, 1.0), um(m, 0.0);
  double bound_sum = 0.0;
  double rho, log_bound;
  const double t = std::sqrt(q * std::fabs(bb));
  for (std::size_t j = 0; j < m; ++j) {
    amp[j] = comps[j].coef * std::sqrt(kPi / a) * std::exp(-comps[j].k * comps[j].k / (4.0 * a));
    cj[j] = comps[j].k / (2.0 * a);
    const double expo = bb > 0.0 ? cj[j] * cj[j] / (2.0 * bb) : cj[j] * cj[j] / std::fabs(bb) * t / (2.0 * (1.0 - t));
    bound_sum += std::abs(amp[j]) * std::exp(expo);
  }
  if (bb > 0.0) {
    // Cramer's inequality for Hermite functions
    rho = q * bb;
    log_bound = 2.0 * std::log(1.0865 * bound_sum);
  } else {
    // Mehler kernel bound
    rho = t;
    log_bound = 2.0 * std::log(bound_sum) - 0.5 * std::log1p(-t * t);
  }
  const double pref = state.norm_sq_scaled() * std::sqrt(q) * rp * rp;
  if (!(rho < 1.0)) throw ConvergenceError("parity series does not converge");
  // smallest n with pref * B * rho^(n+1) / (1 - rho) < tol
  const double need = (std::log(tol) - std::log(pref) - log_bound + std::log1p(-rho)) / std::log(rho) - 1.0;
  const double n_needed = std::max(3.0, std::ceil(need));
  if (!(n_needed < double(kMaxSeriesTerms)))
    throw ConvergenceError("parity series needs more than " + std::to_string(kMaxSeriesTerms) + " terms");
  const long long nmax = static_cast<long long>(n_needed);

  std::array<double, 2> parts{0.0, 0.0};
  for (long long n = 0; n <= nmax; ++n) {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += amp[j] * u[j];
    parts[n & 1] += std::norm(sum);
    const double c1 = std::sqrt(2.0 * q / double(n + 1));
    const double c2 = q * bb * std::sqrt(double(n) / double(n + 1));
    for (std::size_t j = 0; j < m; ++j) {
      const double next = c1 * cj[j] * u[j] - c2 * um[j];
      um[j] = u[j];
      u[j] = next;
    }
  }
  const double plus = pref * parts[0], minus = pref * parts[1];
  SymmetryResult r = make_symmetry_result(plus - minus, SymmetryMethod::parity_series);
  r.d_s_plus = plus;
  r.d_s_minus = minus;
  r.series_terms_used = nmax + 1;
  return r;
}

double ds_separable_limit(const BiphotonState& state) {
  const ScaledParams& s = state.scaled();
  if (!s.separable) throw DomainError("ds_separable_limit requires sigma_p = infinity");
  const auto rule = shared_quadrature(QuadratureKind::gauss_hermite, 120);
  const double kappa = 0.5 * (1.0 + 1.0 / (s.r2 * s.r2));
  const double scale = 1.0 / std::sqrt(kappa);
  std::complex<double> integral = 0.0;
  for (int i = 0; i < rule->order; ++i) {
    const double x = rule->nodes[i] * scale;
    const double e = -0.5 * x * x * (1.0 + 1.0 / (s.r2 * s.r2));
    integral += rule->scaled_weights[i] * std::polar(std::exp(e) * state.modulation_factor(x), x * (s.t1 - s.t2));
  }
  integral *= scale;
  return state.norm_sq_scaled() * std::norm(integral);
}

ApproxValue ds_small_beta_approx(const BiphotonState& state, double beta) {
  const SpdcParams& p = state.spdc();
  const double s1 = p.sigma1 * p.sigma1, s2 = p.sigma2 * p.sigma2;
  const double bx = beta * beta * s1 * s2 / (s1 + s2);
  const double c = std::cos(2.0 * beta * p.omega);
  // 1 + cos(2 beta Omega) = 2 cos^2(beta Omega), kept exact at the resonances
  const double cb = std::cos(beta * p.omega);
  ApproxValue v;
  v.value = 1.0 + 2.0 * bx * c / (2.0 * cb * cb - bx * c);
  v.regime_warning = bx > 0.1;
  return v;
}

int default_gate_order(const SpdcParams& spdc, double tau_f) {
  const double st = std::max(spdc.sigma1, spdc.sigma2) * tau_f;
  const int n = static_cast<int>(std::ceil(16.0 * st / 8.0)) * 8;
  return std::max(64, n);
}

double p2c_finite_gate(const BiphotonState& state, double tau_f, int order) {
  const ScaledParams& s = state.scaled();
  if (s.separable) throw DomainError("p2c_finite_gate requires finite sigma_p");
  if (!(tau_f >= 0.0) || !std::isfinite(tau_f)) throw DomainError("gate time must be finite and non-negative");
  if (tau_f == 0.0) return 0.0;
  const double st = tau_f * state.spdc().sigma1;  // scaled gate time
  const double smax = std::max(1.0, s.r2);
  if (!(order > 4.0 * smax * st))
    throw QuadratureError("gate integral undersampled: order must exceed 4 sigma tau_f = " +
                          std::to_string(4.0 * smax * st) + "; reduce tau_f or raise the order");

  // composite 8-point Gauss-Legendre over +-6 max(sigma)
  const auto gl = shared_quadrature(QuadratureKind::gauss_legendre, 8);
  const int panels = std::max(1, order / 8);
  const double half = 6.0 * smax;
  const double h = 2.0 * half / panels;
  std::vector<double> ys, wy;
  ys.reserve(panels * 8);
  wy.reserve(panels * 8);
  for (int k = 0; k < panels; ++k) {
    const double mid = -half + (k + 0.5) * h;
    for (int i = 0; i < 8; ++i) {
      ys.push_back(mid + 0.5 * h * gl->nodes[i]);
      wy.push_back(0.5 * h * gl->weights[i]);
    }
  }
  auto kernel = [st](double d) { return std::fabs(d) < 1e-8 ? st * (1.0 - st * st * d * d / 6.0) : std::sin(st * d) / d; };
  auto term = [&](bool exchange) {
    const GaussForm form = exchange ? exchange_form(s) : intensity_form(s);
    return integrate_plane(form, 48, [&](double x1, double x2) {
      std::complex<double> inner = 0.0;
      const double target = exchange ? x1 : x2;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const double y = ys[j];
        inner += wy[j] * kernel(target - y) * std::conj(state.amplitude_scaled(x1 + x2 - y, y));
      }
      return state.amplitude_scaled(x1, x2) * inner;
    });
  };
  const std::complex<double> t1 = term(false), t2 = term(true);
  return ((t1 - t2) / (2.0 * kPi)).real();
}

}  // namespace hom
