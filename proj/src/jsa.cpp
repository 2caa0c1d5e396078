#include "biphoton/jsa.hpp"

#include <cmath>
#include <string>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace hom {

double PumpWidth::value() const {
  if (infinite_) throw DomainError("sigma_p is infinite");
  return value_;
}

bool SpdcParams::narrowband_warning() const {
  return !sigma_p.is_infinite() && sigma_p.value() > 0.1 * omega;
}

void SpdcParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(std::string(name) + " must be finite and positive");
  };
  positive(sigma1, "sigma1");
  positive(sigma2, "sigma2");
  positive(omega, "omega");
  if (!sigma_p.is_infinite()) positive(sigma_p.value(), "sigma_p");
  if (!std::isfinite(tau1) || !std::isfinite(tau2)) throw DomainError("tau1/tau2 must be finite");
}

double ModulationSpec::delta_l() const { return beta_to_delta_l(beta); }

ModulationSpec ModulationSpec::from_delta_l(ModulationKind kind, double delta_l_m) {
  return ModulationSpec{kind, delta_l_to_beta(delta_l_m)};
}

Whitening whiten(const GaussForm& f) {
  const double a = f.d1 + f.p, d = f.d2 + f.p, c = f.p;
  const double det = f.d1 * f.d2 + f.p * (f.d1 + f.d2);
  if (!(det > 0.0) || !(a > 0.0) || !(d > 0.0)) throw DomainError("whiten: form is not positive definite");
  const double half = 0.5 * (a - d);
  const double big = 0.5 * (a + d) + std::hypot(half, c);
  Whitening w;
  w.mu_a = big;
  w.mu_b = det / big;
  double vx, vy;
  if (a >= d) {
    vx = big - d;
    vy = c;
  } else {
    vx = c;
    vy = big - a;
  }
  const double nrm = std::hypot(vx, vy);
  if (nrm == 0.0) {
    vx = 1.0;
    vy = 0.0;
  } else {
    vx /= nrm;
    vy /= nrm;
  }
  w.ax = vx;
  w.ay = vy;
  w.jacobian = 1.0 / std::sqrt(det);
  return w;
}

ScaledParams to_scaled(const SpdcParams& spdc, const ModulationSpec& mod) {
  spdc.validate();
  if (!std::isfinite(mod.beta) || mod.beta < 0.0) throw DomainError("beta must be finite and non-negative");
  ScaledParams s;
  const double sg = spdc.sigma1;
  s.r2 = spdc.sigma2 / sg;
  s.separable = spdc.sigma_p.is_infinite();
  s.rp = s.separable ? 0.0 : spdc.sigma_p.value() / sg;
  s.w = spdc.omega / sg;
  s.t1 = spdc.tau1 * sg;
  s.t2 = spdc.tau2 * sg;
  s.kind = mod.kind;
  const double beta = mod.effective_beta();
  s.b = beta * sg;
  s.b_omega = beta * spdc.omega;
  return s;
}

namespace {

double pump_coef(const ScaledParams& s) { return s.separable ? 0.0 : 1.0 / (s.rp * s.rp); }

// Form of the amplitude itself: psi ~ exp(-(x^T A x)).
GaussForm amplitude_form(const ScaledParams& s) {
  return GaussForm{0.5, 0.5 / (s.r2 * s.r2), 0.5 * pump_coef(s)};
}

double det_form(const GaussForm& f) { return f.d1 * f.d2 + f.p * (f.d1 + f.d2); }

}  // namespace

GaussForm intensity_form(const ScaledParams& s) {
  return GaussForm{1.0, 1.0 / (s.r2 * s.r2), pump_coef(s)};
}

GaussForm exchange_form(const ScaledParams& s) {
  const double d = 0.5 + 0.5 / (s.r2 * s.r2);
  return GaussForm{d, d, pump_coef(s)};
}

double gaussian_norm_sq(const ScaledParams& s) {
  return 2.0 * std::sqrt(det_form(amplitude_form(s))) / kPi;
}

double alpha_sq_scaled(const ScaledParams& s) {
  const GaussForm a = amplitude_form(s);
  return (a.d2 + a.p) / (2.0 * det_form(a));
}

double BiphotonState::modulation_factor(double x1) const {
  switch (scaled_.kind) {
    case ModulationKind::cosine:
      return std::cos(scaled_.b_omega + scaled_.b * x1);
    case ModulationKind::sine:
      return std::sin(scaled_.b_omega + scaled_.b * x1);
    case ModulationKind::none:
      break;
  }
  return 1.0;
}

std::complex<double> BiphotonState::raw_amplitude_scaled(double x1, double x2) const {
  const ScaledParams& s = scaled_;
  const double u = x1 + x2;
  double e = -0.5 * x1 * x1 - 0.5 * x2 * x2 / (s.r2 * s.r2);
  if (!s.separable) e -= 0.5 * u * u / (s.rp * s.rp);
  const double phase = (s.w + x1) * s.t1 + (s.w + x2) * s.t2;
  return std::polar(std::exp(e) * modulation_factor(x1), phase);
}

std::complex<double> BiphotonState::amplitude_scaled(double x1, double x2) const {
  return std::sqrt(norm_sq_scaled_) * raw_amplitude_scaled(x1, x2);
}

BiphotonState normalize(const SpdcParams& spdc, const ModulationSpec& mod, int quad_order) {
  BiphotonState st;
  st.spdc_ = spdc;
  st.mod_ = mod;
  st.scaled_ = to_scaled(spdc, mod);
  const ScaledParams& s = st.scaled_;
  const double n0 = gaussian_norm_sq(s);
  constexpr double kDegenerate = 1e-12;
  switch (s.kind) {
    case ModulationKind::none:
      st.norm_sq_scaled_ = n0;
      break;
    case ModulationKind::cosine: {
      // <cos^2> = (1 + cos(2 b Omega) exp(-b^2 alpha^2)) / 2, written without cancellation.
      const double c = std::cos(s.b_omega);
      const double denom =
          2.0 * c * c + std::cos(2.0 * s.b_omega) * std::expm1(-s.b * s.b * alpha_sq_scaled(s));
      if (!(denom >= kDegenerate))
        throw DegenerateStateError("cosine modulation annihilates the state", mod.beta);
      st.norm_sq_scaled_ = n0 * 2.0 / denom;
      break;
    }
    case ModulationKind::sine: {
      st.norm_sq_scaled_ = 1.0;
      const double integral =
          integrate_plane(intensity_form(s), quad_order, [&](double x1, double x2) {
            return std::norm(st.raw_amplitude_scaled(x1, x2));
          }).real();
      // relative to the unmodulated integral 1/n0
      if (!(integral * n0 >= 0.5 * kDegenerate))
        throw DegenerateStateError("sine modulation annihilates the state", mod.beta);
      st.norm_sq_scaled_ = 1.0 / integral;
      st.norm_from_quadrature_ = true;
      break;
    }
  }
  if (!std::isfinite(st.norm_sq_scaled_)) throw DomainError("normalization is not finite");
  return st;
}

std::complex<double> evaluate_jsa(const BiphotonState& state, double omega1, double omega2) {
  const SpdcParams& p = state.spdc();
  const double x1 = (omega1 - p.omega) / p.sigma1;
  const double x2 = (omega2 - p.omega) / p.sigma1;
  return state.amplitude_scaled(x1, x2) / p.sigma1;
}

std::complex<double> phi12(const BiphotonState& state, double omega_tilde) {
  const SpdcParams& p = state.spdc();
  const double x = omega_tilde / p.sigma1;
  const ScaledParams& s = state.scaled();
  const double e = -0.5 * x * x * (1.0 + 1.0 / (s.r2 * s.r2));
  const double phase = (s.w + x) * (s.t1 - s.t2);
  return std::polar(std::exp(e) * state.modulation_factor(x), phase);
}

ParitySplit phi12_parity_split(const BiphotonState& state, double omega_tilde) {
  const std::complex<double> a = phi12(state, omega_tilde);
  const std::complex<double> b = phi12(state, -omega_tilde);
  return ParitySplit{0.5 * (a + b), 0.5 * (a - b)};
}

MziDescription mzi_transform_description(double l1_m, double l2_m) {
  if (!(l1_m >= 0.0) || !(l2_m >= 0.0)) throw DomainError("arm lengths must be non-negative");
  const double beta = std::fabs(l2_m - l1_m) / (2.0 * kSpeedOfLight);
  MziDescription d;
  d.port1 = ModulationSpec{ModulationKind::cosine, beta};
  d.port3 = ModulationSpec{ModulationKind::sine, beta};
  d.path_sum = l1_m + l2_m;
  d.port3_sign = l2_m >= l1_m ? 1.0 : -1.0;
  return d;
}

}  // namespace hom
