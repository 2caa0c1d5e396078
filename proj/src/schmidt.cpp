#include "biphoton/schmidt.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>

#include "biphoton/errors.hpp"
#include "biphoton/specfun.hpp"
#include "biphoton/units.hpp"

namespace hom {

std::string_view to_string(SchmidtMethod m) {
  switch (m) {
    case SchmidtMethod::exact_geometric: return "exact_geometric";
    case SchmidtMethod::numeric_diag: return "numeric_diag";
    case SchmidtMethod::perturbative: return "perturbative";
    case SchmidtMethod::heuristic: return "heuristic";
    case SchmidtMethod::approx_closed: return "approx_closed";
  }
  return "unknown";
}

double MehlerParams::lambda(int n) const {
  if (n == 0) return one_minus_z_sq;
  if (z == 0.0) return 0.0;
  return one_minus_z_sq * std::exp(2.0 * n * std::log(z));
}

MehlerParams mehler_params(const SpdcParams& spdc, double beta) {
  const ScaledParams s = to_scaled(spdc, ModulationSpec{ModulationKind::cosine, beta});
  const double sg = spdc.sigma1;
  const double r2sq = s.r2 * s.r2;
  MehlerParams m;
  m.xi_sq = r2sq / (1.0 + r2sq) * sg * sg;
  m.alpha_sq = alpha_sq_scaled(s) * sg * sg;
  if (s.separable) {
    m.s1 = sg;
    m.s2 = spdc.sigma2;
    m.z = 0.0;
    m.one_minus_z_sq = 1.0;
    // gamma^2 sigma_p^2 stays finite (xi^2) while gamma^2 itself vanishes
    m.gamma_sq = 0.0;
  } else {
    const double rpsq = s.rp * s.rp;
    const double tot = 1.0 + r2sq + rpsq;
    const double s1 = std::sqrt(s.rp) * std::pow(r2sq + rpsq, 0.25) / (std::pow(1.0 + rpsq, 0.25) * std::pow(tot, 0.25));
    const double s2 = s1 * s.r2 * std::sqrt((1.0 + rpsq) / (r2sq + rpsq));
    const double den = s1 * s1 * (1.0 + rpsq) + rpsq;
    // s1^2 (1 + rp^2) - rp^2 without cancellation
    const double num = s.rp * r2sq / (std::sqrt(tot) * (std::sqrt((r2sq + rpsq) * (1.0 + rpsq)) + s.rp * std::sqrt(tot)));
    m.s1 = s1 * sg;
    m.s2 = s2 * sg;
    m.z = std::sqrt(num / den);
    m.one_minus_z_sq = 2.0 * rpsq / den;
    m.gamma_sq = r2sq / ((1.0 + r2sq) * rpsq + 4.0 * r2sq);
    const double check = m.s1 * m.s1 * (1.0 + m.z * m.z) / m.one_minus_z_sq;
    if (std::fabs(check - m.alpha_sq) > 1e-9 * m.alpha_sq)
      throw Error("internal: alpha^2 identity violated in Mehler parameters");
  }
  const double c = std::cos(beta * spdc.omega);
  const double denom = 2.0 * c * c + std::cos(2.0 * beta * spdc.omega) * std::expm1(-beta * beta * m.alpha_sq);
  m.n_tilde_sq = denom > 0.0 ? 2.0 / denom : INFINITY;
  return m;
}

double schmidt_number_closed(const SpdcParams& spdc) {
  spdc.validate();
  if (spdc.sigma_p.is_infinite()) return 1.0;
  const double a = spdc.sigma1 * spdc.sigma1, b = spdc.sigma2 * spdc.sigma2;
  const double p = spdc.sigma_p.value() * spdc.sigma_p.value();
  return std::sqrt(1.0 + (a / p) * (b / (a + b + p)));
}

PumpWidth sigma_p_from_k(double k, double sigma1, double sigma2) {
  if (!(k > 1.0) || !std::isfinite(k)) throw DomainError("sigma_p_from_k: K must exceed 1");
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw DomainError("sigma_p_from_k: widths must be positive");
  const double a = sigma1 * sigma1, b = sigma2 * sigma2;
  const double half = 0.5 * (a + b);
  const double g = a * b / ((k - 1.0) * (k + 1.0));
  const double sp2 = g / (std::sqrt(half * half + g) + half);
  const double sp = std::sqrt(sp2);
  if (!(sp2 > 0.0) || sp > 1e12 * std::max(sigma1, sigma2)) return PumpWidth::infinite();
  return PumpWidth(sp);
}

int mode_count(const MehlerParams& m, const TruncationPolicy& policy) {
  if (m.z == 0.0) return 1;
  const double n = std::ceil(std::log(policy.tol) / (2.0 * std::log(m.z)));
  return static_cast<int>(std::clamp(n, 1.0, double(policy.cap)));
}

SchmidtSpectrum schmidt_standard(const SpdcParams& spdc, double tol) {
  const MehlerParams m = mehler_params(spdc);
  SchmidtSpectrum sp;
  sp.method = SchmidtMethod::exact_geometric;
  if (m.z == 0.0) {
    sp.eigenvalues = {1.0};
    sp.truncation = 1;
    sp.k = 1.0;
    return sp;
  }
  TruncationPolicy pol;
  pol.tol = tol;
  const int n = mode_count(m, pol);
  sp.eigenvalues.resize(n);
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    sp.eigenvalues[i] = m.lambda(i);
    sum_sq += sp.eigenvalues[i] * sp.eigenvalues[i];
  }
  sp.truncation = n;
  // tail z^(2N) computed directly rather than as 1 - sum
  sp.trace_deficit = std::exp(2.0 * n * std::log(m.z));
  sp.k = m.k0();
  const double tail_sq = m.one_minus_z_sq * m.one_minus_z_sq * std::exp(4.0 * n * std::log(m.z)) / (m.one_minus_z_sq * (1.0 + m.z * m.z));
  if (std::fabs(1.0 / (sum_sq + tail_sq) - sp.k) > 1e-10 * sp.k)
    throw Error("internal: geometric Schmidt number mismatch");
  return sp;
}

namespace {

double overlap_phase(int d, double beta_omega) {
  if (d % 2 == 0) return ((d / 2) % 2 == 0 ? 1.0 : -1.0) * std::cos(beta_omega);
  return (((d + 1) / 2) % 2 == 0 ? 1.0 : -1.0) * std::sin(beta_omega);
}

constexpr double kBandFloor = 1e-18;
constexpr double kRescale = 1e150;

// Calls emit(r, value) for r = 0..rmax with value = sqrt(r!/(r+d)!) x^(d/2) e^(-x/2) L_r^(d)(x).
template <class Emit>
void laguerre_diagonal(int d, int rmax, double x, Emit&& emit) {
  const double log_scale_step = std::log(kRescale);
  double scale = -0.5 * std::lgamma(d + 1.0) + 0.5 * d * std::log(x) - 0.5 * x;
  double m0 = 1.0;
  emit(0, std::exp(scale));
  if (rmax < 1) return;
  double m1 = (1.0 + d - x) / std::sqrt(1.0 + d);
  auto out = [&](int r, double m) {
    emit(r, m == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::fabs(m)) + scale), m));
  };
  out(1, m1);
  for (int r = 1; r < rmax; ++r) {
    const double m2 = ((2.0 * r + 1.0 + d - x) * m1 - std::sqrt(r * (r + double(d))) * m0) /
                      std::sqrt((r + 1.0) * (r + 1.0 + d));
    m0 = m1;
    m1 = m2;
    if (std::fabs(m1) > kRescale) {
      m1 /= kRescale;
      m0 /= kRescale;
      scale += log_scale_step;
    }
    out(r + 1, m1);
  }
}

}  // namespace

double scalar_product_basis(int p, int n, double beta, const MehlerParams& mehler, double omega) {
  if (p < 0 || n < 0) throw DomainError("scalar_product_basis: negative index");
  const double x = 0.5 * (beta * mehler.s1) * (beta * mehler.s1);
  const int d = std::abs(p - n);
  const double phase = overlap_phase(d, beta * omega);
  if (x == 0.0) return d == 0 ? phase : 0.0;
  return phase * g_polynomial(p, n, x) * std::exp(-0.5 * x);
}

OverlapBand overlap_band(int dim, int modes, double beta, const MehlerParams& mehler, double omega) {
  if (dim < 1 || modes < 1) throw DomainError("overlap_band: sizes must be positive");
  OverlapBand ob;
  ob.s = Eigen::MatrixXd::Zero(dim, modes);
  const double x = 0.5 * (beta * mehler.s1) * (beta * mehler.s1);
  const double bo = beta * omega;
  if (x == 0.0) {
    for (int i = 0; i < std::min(dim, modes); ++i) ob.s(i, i) = overlap_phase(0, bo);
    return ob;
  }
  const int dmax = std::max(dim, modes) - 1;
  for (int d = 0; d <= dmax; ++d) {
    const double ph = overlap_phase(d, bo);
    // rows p = r + d, columns n = r (and the transpose position)
    const int r_lower = std::min(dim - d, modes);      // p = r + d < dim, n = r < modes
    const int r_upper = std::min(dim, modes - d);      // p = r < dim, n = r + d < modes
    const int rcount = std::max(r_lower, r_upper);
    if (rcount <= 0) break;
    double biggest = 0.0;
    laguerre_diagonal(d, rcount - 1, x, [&](int r, double v) {
      biggest = std::max(biggest, std::fabs(v));
      if (r < r_lower) ob.s(r + d, r) = ph * v;
      if (d > 0 && r < r_upper) ob.s(r, r + d) = ph * v;
    });
    ob.band = d;
    if (d > 3 && biggest < kBandFloor) break;
  }
  return ob;
}

namespace {

void require_cosine(const BiphotonState& state) {
  if (state.modulation().kind == ModulationKind::sine)
    throw DomainError("Schmidt analysis covers the unmodulated and cosine-modulated states");
}

}  // namespace

DensityMatrix reduced_density_matrix(const BiphotonState& state, int dim, const TruncationPolicy& policy) {
  require_cosine(state);
  if (dim < 1) throw DomainError("reduced_density_matrix: dim must be positive");
  const double beta = state.modulation().effective_beta();
  const MehlerParams m = mehler_params(state.spdc(), beta);
  if (!std::isfinite(m.n_tilde_sq)) throw DegenerateStateError("cosine modulation annihilates the state", beta);
  const int modes = mode_count(m, policy);
  OverlapBand ob = overlap_band(dim, modes, beta, m, state.spdc().omega);
  Eigen::MatrixXd& t = ob.s;
  for (int n = 0; n < modes; ++n) t.col(n) *= std::sqrt(m.lambda(n));
  const int w = ob.band;
  DensityMatrix dm;
  dm.modes = modes;
  dm.rho = Eigen::MatrixXd::Zero(dim, dim);
  for (int p = 0; p < dim; ++p) {
    const int qlo = std::max(0, p - 2 * w);
    for (int q = qlo; q <= p; ++q) {
      const int nlo = std::max(0, p - w);
      const int nhi = std::min(modes - 1, q + w);
      double acc = 0.0;
      for (int n = nlo; n <= nhi; ++n) acc += t(p, n) * t(q, n);
      dm.rho(p, q) = dm.rho(q, p) = m.n_tilde_sq * acc;
    }
  }
  dm.trace_deficit = 1.0 - dm.rho.trace();
  if (std::fabs(dm.trace_deficit) > policy.trace_tol) {
    const int suggested = std::max(dim + w + 8, dim + dim / 4);
    throw TruncationError("density matrix trace deficit " + std::to_string(dm.trace_deficit) +
                              " exceeds tolerance; increase the dimension",
                          suggested);
  }
  return dm;
}

DensityMatrix reduced_density_matrix_auto(const BiphotonState& state, const TruncationPolicy& policy) {
  require_cosine(state);
  const double beta = state.modulation().effective_beta();
  const MehlerParams m = mehler_params(state.spdc(), beta);
  const int modes = mode_count(m, policy);
  const int band = overlap_band(modes, modes, beta, m, state.spdc().omega).band;
  int dim = modes + band + 8;
  for (int attempt = 0;; ++attempt) {
    try {
      return reduced_density_matrix(state, dim, policy);
    } catch (const TruncationError& e) {
      if (attempt >= 4 || e.suggested_dim > 4 * policy.cap) throw;
      dim = e.suggested_dim;
    }
  }
}

SchmidtSpectrum schmidt_numeric(const BiphotonState& state, const TruncationPolicy& policy) {
  const DensityMatrix dm = reduced_density_matrix_auto(state, policy);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm.rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigen-solve of the density matrix failed");
  SchmidtSpectrum sp;
  sp.method = SchmidtMethod::numeric_diag;
  sp.truncation = static_cast<int>(dm.rho.rows());
  sp.trace_deficit = dm.trace_deficit;
  const Eigen::VectorXd& ev = es.eigenvalues();
  sp.eigenvalues.reserve(ev.size());
  double purity = 0.0;
  for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i) {
    double v = ev[i];
    if (v < -1e-10) throw Error("internal: density matrix has eigenvalue " + std::to_string(v));
    v = std::max(v, 0.0);
    sp.eigenvalues.push_back(v);
    purity += v * v;
  }
  const double frob = dm.rho.squaredNorm();
  if (std::fabs(purity - frob) > 1e-10 * frob) throw Error("internal: purity mismatch between eigenvalues and Frobenius norm");
  sp.k = 1.0 / purity;
  return sp;
}

double schmidt_number_purity(const BiphotonState& state, const TruncationPolicy& policy) {
  return 1.0 / reduced_density_matrix_auto(state, policy).rho.squaredNorm();
}

SchmidtSpectrum schmidt_perturbative(const BiphotonState& state, int dim, const TruncationPolicy& policy) {
  const DensityMatrix dm = dim > 0 ? reduced_density_matrix(state, dim, policy) : reduced_density_matrix_auto(state, policy);
  SchmidtSpectrum sp;
  sp.method = SchmidtMethod::perturbative;
  sp.truncation = static_cast<int>(dm.rho.rows());
  const Eigen::VectorXd diag = dm.rho.diagonal();
  sp.eigenvalues.assign(diag.data(), diag.data() + diag.size());
  std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(), std::greater<>());
  double sum = 0.0, sum_sq = 0.0;
  for (double v : sp.eigenvalues) {
    sum += v;
    sum_sq += v * v;
  }
  sp.trace_deficit = 1.0 - sum;
  sp.k = 1.0 / sum_sq;
  return sp;
}

SchmidtSpectrum schmidt_heuristic(const BiphotonState& state, int dim, const TruncationPolicy& policy) {
  require_cosine(state);
  const double beta = state.modulation().effective_beta();
  const double omega = state.spdc().omega;
  const MehlerParams m = mehler_params(state.spdc(), beta);
  const int n = dim > 0 ? dim : mode_count(m, policy);
  const double y = 2.0 * (beta * m.s1) * (beta * m.s1);
  const double c2 = std::cos(2.0 * beta * omega);
  const double c = std::cos(beta * omega);
  const double denom = 2.0 * c * c + c2 * std::expm1(-beta * beta * m.alpha_sq);
  if (!(denom >= 1e-12)) throw DegenerateStateError("cosine modulation annihilates the state", beta);
  const double ey = std::exp(-0.5 * y);
  SchmidtSpectrum sp;
  sp.method = SchmidtMethod::heuristic;
  sp.truncation = n;
  sp.eigenvalues.resize(n);
  double l0 = 1.0, l1 = 1.0 - y;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < n; ++k) {
    const double lag = k == 0 ? 1.0 : l1;
    if (k >= 1) {
      const double l2 = ((2.0 * k + 1.0 - y) * l1 - k * l0) / (k + 1.0);
      l0 = l1;
      l1 = l2;
    }
    // 1 + c2 e^{-y/2} L_k(y) = 2 cos^2 + c2 (e^{-y/2} L_k - 1)
    const double factor = 2.0 * c * c + c2 * (ey * lag - 1.0);
    const double v = m.lambda(k) * factor / denom;
    sp.eigenvalues[k] = v;
    sum += v;
    sum_sq += v * v;
  }
  std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(), std::greater<>());
  sp.trace_deficit = 1.0 - sum;
  sp.k = 1.0 / sum_sq;
  return sp;
}

double approx_k_closed(const BiphotonState& state) {
  require_cosine(state);
  if (state.spdc().sigma_p.is_infinite()) throw DomainError("approx_k_closed requires finite sigma_p");
  const double beta = state.modulation().effective_beta();
  const double omega = state.spdc().omega;
  const MehlerParams m = mehler_params(state.spdc(), beta);
  const double z2 = m.z * m.z, z4 = z2 * z2;
  const double eta_sq = (beta * m.s1) * (beta * m.s1) / (m.one_minus_z_sq * (1.0 + z2));
  const double u = eta_sq * (1.0 + z4);
  const double y = 4.0 * eta_sq * z2;
  const double c = std::cos(beta * omega);
  const double c2 = std::cos(2.0 * beta * omega);
  const double num_root = 2.0 * c * c + c2 * std::expm1(-beta * beta * m.alpha_sq);
  if (!(num_root >= 1e-12)) throw DegenerateStateError("cosine modulation annihilates the state", beta);
  // 1 + 2R + R^2 I0(y) = (1 + R)^2 + R^2 (I0(y) - 1), each part without cancellation
  const double one_plus_r = 2.0 * c * c + c2 * std::expm1(-u);
  double e2_i0_minus_1;
  if (y < 1.0) {
    const double t = 0.25 * y * y;
    double term = t, series = t;
    for (int k = 2; k < 60 && term > 1e-17 * series; ++k) {
      term *= t / (double(k) * k);
      series += term;
    }
    e2_i0_minus_1 = std::exp(-2.0 * u) * series;
  } else {
    e2_i0_minus_1 = std::exp(-2.0 * u + y) * bessel_i0e(y) - std::exp(-2.0 * u);
  }
  const double denom = one_plus_r * one_plus_r + c2 * c2 * e2_i0_minus_1;
  return m.k0() * num_root * num_root / denom;
}

ApproxValue approx_k_small_sigma_p(const BiphotonState& state) {
  require_cosine(state);
  const SpdcParams& p = state.spdc();
  const double beta = state.modulation().effective_beta();
  const double bx = beta * beta * p.sigma1 * p.sigma1 * p.sigma2 * p.sigma2 /
                    (p.sigma1 * p.sigma1 + p.sigma2 * p.sigma2);
  const double c = std::cos(beta * p.omega);
  const double c2 = std::cos(2.0 * beta * p.omega);
  const double one_plus_c = 2.0 * c * c;
  const double a = one_plus_c - bx * c2;
  const double b = one_plus_c - 0.5 * bx * c2;
  ApproxValue v;
  v.value = schmidt_number_closed(p) * a * a / (b * b + 0.25 * c2 * c2 * bx * bx);
  v.regime_warning = bx > 0.1 || p.sigma_p.is_infinite() || p.sigma_p.value() > 0.1 * p.sigma1;
  return v;
}

}  // namespace hom
