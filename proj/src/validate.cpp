#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>

#include "biphoton/errors.hpp"
#include "biphoton/resonance.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/specfun.hpp"
#include "biphoton/sweep.hpp"
#include "biphoton/symmetry.hpp"
#include "biphoton/units.hpp"

namespace hom {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Draw {
  SpdcParams spdc;
  double beta = 0.0;
};

struct DrawOutcome {
  double err_closed_spdc = 0.0;
  double err_closed_mod = 0.0;
  double err_parity = 0.0;
  double separable_min = 1.0;
  int skipped = 0;
  std::string failure;
};

DrawOutcome run_draw(const Draw& d, int order) {
  DrawOutcome out;
  try {
    const BiphotonState plain = normalize(d.spdc, ModulationSpec{}, order);
    const double q0 = ds_quadrature(plain, order).d_s;
    out.err_closed_spdc = std::fabs(ds_closed_spdc(d.spdc).d_s - q0);
    out.err_parity = std::fabs(ds_parity_series(plain).d_s - q0);

    for (ModulationKind kind : {ModulationKind::cosine, ModulationKind::sine}) {
      BiphotonState st;
      try {
        st = normalize(d.spdc, ModulationSpec{kind, d.beta}, order);
      } catch (const DegenerateStateError&) {
        ++out.skipped;
        continue;
      }
      const double q = ds_quadrature(st, order).d_s;
      out.err_parity = std::max(out.err_parity, std::fabs(ds_parity_series(st).d_s - q));
      if (kind == ModulationKind::cosine) out.err_closed_mod = std::fabs(ds_closed_modulated(st).d_s - q);
    }

    SpdcParams sep = d.spdc;
    sep.sigma_p = PumpWidth::infinite();
    for (ModulationKind kind : {ModulationKind::none, ModulationKind::cosine, ModulationKind::sine}) {
      try {
        const BiphotonState st = normalize(sep, ModulationSpec{kind, d.beta}, order);
        out.separable_min = std::min(out.separable_min, ds_separable_limit(st));
      } catch (const DegenerateStateError&) {
        ++out.skipped;
      }
    }
  } catch (const std::exception& e) {
    out.failure = e.what();
    out.err_closed_spdc = out.err_closed_mod = out.err_parity = INFINITY;
  }
  return out;
}

}  // namespace

std::vector<CheckResult> validate_suite(const ValidateOptions& opt) {
  std::vector<CheckResult> checks;
  auto add = [&](std::string name, bool ok, std::string detail) {
    checks.push_back(CheckResult{std::move(name), ok, std::move(detail)});
  };

  // Random oracle-equivalence draws
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const SpdcParams ref = reference_params(0.01);
  std::vector<Draw> draws(std::max(0, opt.draws));
  for (auto& d : draws) {
    const double rp = std::exp(std::log(1e-3) + u01(rng) * (std::log(10.0) - std::log(1e-3)));
    const double b_omega = 300.0 * u01(rng);
    const double dt = 3.0 * u01(rng);
    const double r2 = 0.5 + 1.5 * u01(rng);
    d.spdc = ref;
    d.spdc.sigma2 = r2 * ref.sigma1;
    d.spdc.sigma_p = PumpWidth(rp * ref.sigma1);
    d.spdc.tau1 = 0.0;
    d.spdc.tau2 = dt / ref.sigma1;
    d.beta = b_omega / ref.omega;
  }
  std::vector<DrawOutcome> outcomes(draws.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < draws.size(); i = next++) outcomes[i] = run_draw(draws[i], opt.quad_order);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(opt.threads, static_cast<int>(draws.size())); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  double e1 = 0.0, e2 = 0.0, e3 = 0.0, sep_min = 1.0;
  int skipped = 0;
  std::size_t worst = 0;
  std::string failure;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    const double worst_here = std::max({o.err_closed_spdc, o.err_closed_mod, o.err_parity});
    if (worst_here > std::max({e1, e2, e3})) worst = i;
    e1 = std::max(e1, o.err_closed_spdc);
    e2 = std::max(e2, o.err_closed_mod);
    e3 = std::max(e3, o.err_parity);
    sep_min = std::min(sep_min, o.separable_min);
    skipped += o.skipped;
    if (failure.empty() && !o.failure.empty()) failure = o.failure;
  }
  const double tol_oracle = 1e-7;
  std::string worst_detail;
  if (!draws.empty()) {
    const auto& w = draws[worst];
    worst_detail = fmt("; worst draw sigma_p/sigma1=%.4g beta*Omega=%.4g dtau*sigma1=%.4g",
                       w.spdc.sigma_p.value() / w.spdc.sigma1, w.beta * w.spdc.omega,
                       w.spdc.delta_tau() * w.spdc.sigma1);
  }
  const std::string draws_text = std::to_string(draws.size()) + " draws, quad_order " + std::to_string(opt.quad_order);
  add("oracle: closed_spdc vs quadrature", e1 < tol_oracle,
      fmt("max |diff| = %.3e (tol 1e-7), ", e1) + draws_text + worst_detail + (failure.empty() ? "" : "; error: " + failure));
  add("oracle: closed_modulated vs quadrature", e2 < tol_oracle,
      fmt("max |diff| = %.3e (tol 1e-7), degenerate states skipped: %.0f", e2, skipped));
  add("oracle: parity_series vs quadrature", e3 < tol_oracle, fmt("max |diff| = %.3e (tol 1e-7)", e3));
  add("parity: separable limit is non-negative", sep_min >= -1e-12, fmt("min D_S = %.3e (floor -1e-12)", sep_min));

  // Parity-matched modulation at equal delays
  {
    SpdcParams p = reference_params(0.05);
    p.sigma2 = 1.7 * p.sigma1;
    double worst_plus = 0.0, worst_minus = 0.0;
    std::string err;
    try {
      const double b0 = beta0(p.omega);
      // odd: cosine at odd multiples of beta0, sine at even multiples; even: the converse
      for (int m : {1, 3, 41}) {
        const auto cos_odd = ds_parity_series(normalize(p, ModulationSpec{ModulationKind::cosine, m * b0}));
        const auto sin_odd = ds_parity_series(normalize(p, ModulationSpec{ModulationKind::sine, (m + 1) * b0}));
        const auto cos_even = ds_parity_series(normalize(p, ModulationSpec{ModulationKind::cosine, (m - 1) * b0}));
        const auto sin_even = ds_parity_series(normalize(p, ModulationSpec{ModulationKind::sine, m * b0}));
        worst_plus = std::max({worst_plus, cos_odd.d_s_plus.value_or(INFINITY), sin_odd.d_s_plus.value_or(INFINITY)});
        worst_minus =
            std::max({worst_minus, cos_even.d_s_minus.value_or(INFINITY), sin_even.d_s_minus.value_or(INFINITY)});
      }
    } catch (const std::exception& e) {
      err = e.what();
      worst_plus = worst_minus = INFINITY;
    }
    add("parity: odd modulation has no even component", worst_plus < 1e-10,
        fmt("max D_S(+) = %.3e (tol 1e-10)", worst_plus) + (err.empty() ? "" : "; error: " + err));
    add("parity: even modulation has no odd component", worst_minus < 1e-10,
        fmt("max D_S(-) = %.3e (tol 1e-10)", worst_minus));
  }

  // Mehler identity
  {
    const double q = opt.mehler_q;
    const double alg1 = std::fabs(q * q + q - 1.0);
    const double alg2 = std::fabs(1.0 - q * q - q);
    double err = INFINITY;
    try {
      err = mehler_identity_error(q);
    } catch (const std::exception&) {
    }
    add("mehler: q^2 + q = 1 and 1 - q^2 = q", alg1 < 1e-15 && alg2 < 1e-15,
        fmt("q = %.17g, residuals %.2e, %.2e", q, alg1, alg2));
    add("mehler: identity on 5x5 grid", err < 1e-8, fmt("max error = %.3e (tol 1e-8)", err));
  }

  // beta = 0 collapse and sigma_p <-> K roundtrip
  {
    double worst_ds = 0.0, worst_k = 0.0, worst_rt = 0.0;
    std::string err;
    try {
      for (double rp : {1.0, 0.1, 0.01}) {
        const SpdcParams p = reference_params(rp);
        const BiphotonState st = normalize(p, ModulationSpec{ModulationKind::cosine, 0.0});
        worst_ds = std::max(worst_ds, std::fabs(ds_closed_modulated(st).d_s - ds_closed_spdc(p).d_s));
        const double k0 = schmidt_number_closed(p);
        worst_k = std::max(worst_k, std::fabs(schmidt_numeric(st).k / k0 - 1.0));
      }
      for (double k : {1.01, 1.5, 2.0, 5.0, 50.0}) {
        SpdcParams p = reference_params(1.0);
        p.sigma2 = 2.0 * p.sigma1;
        p.sigma_p = sigma_p_from_k(k, p.sigma1, p.sigma2);
        worst_rt = std::max(worst_rt, std::fabs(schmidt_standard(p).k / k - 1.0));
      }
    } catch (const std::exception& e) {
      err = e.what();
      worst_ds = worst_k = worst_rt = INFINITY;
    }
    add("collapse: beta = 0 recovers the unmodulated D_S", worst_ds < 1e-12,
        fmt("max |diff| = %.3e (tol 1e-12)", worst_ds) + (err.empty() ? "" : "; error: " + err));
    add("collapse: numeric K at beta = 0 equals K0", worst_k < 1e-8, fmt("max rel diff = %.3e (tol 1e-8)", worst_k));
    add("roundtrip: sigma_p <-> K", worst_rt < 1e-10, fmt("max rel diff = %.3e (tol 1e-10)", worst_rt));
  }

  // Resonance benchmarks
  {
    const SpdcParams p = reference_params(0.01);
    const double dtau_h = std::sqrt(std::log(2.0)) * std::hypot(p.sigma1, p.sigma2) / (p.sigma1 * p.sigma2);
    add("benchmark: HOM dip half-width ~ 20 fs", std::fabs(dtau_h / fs(20.0) - 1.0) <= 0.10,
        fmt("dtau_H = %.3f fs, c*dtau_H = %.3f um (target 20 fs, 6 um, +-10%%)", dtau_h * 1e15,
            kSpeedOfLight * dtau_h * 1e6));
    try {
      ResonanceReport r = hwhm_ds(p, locate_resonance(p, 0, false));
      add("benchmark: D_S at first resonance <= -0.99", r.ds_at_center <= -0.99,
          fmt("D_S = %.6f at beta/beta0 = %.6f", r.ds_at_center, r.beta_center / beta0(p.omega)));
      add("benchmark: resonance half-width epsilon ~ 0.003", std::fabs(r.hwhm_epsilon / 0.003 - 1.0) <= 0.30,
          fmt("epsilon = %.5f (target 0.003 +-30%%), estimate %.5f", r.hwhm_epsilon, epsilon_estimate(p)));
      add("benchmark: path half-width ~ 0.5 nm", std::fabs(r.hwhm_delta_l / nm(0.5) - 1.0) <= 0.30,
          fmt("delta_L = %.4f nm (target 0.5 nm +-30%%)", r.hwhm_delta_l * 1e9));
    } catch (const std::exception& e) {
      add("benchmark: resonance", false, std::string("error: ") + e.what());
    }
  }
  return checks;
}

}  // namespace hom
