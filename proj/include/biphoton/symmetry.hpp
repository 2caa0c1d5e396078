#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string_view>

#include "biphoton/jsa.hpp"

namespace hom {

enum class SymmetryMethod { closed_spdc, closed_modulated, parity_series, quadrature, finite_gate };

std::string_view to_string(SymmetryMethod m);

struct SymmetryResult {
  double d_s = 0.0;
  double p_2c = 0.5;
  SymmetryMethod method = SymmetryMethod::quadrature;
  std::optional<double> d_s_plus;
  std::optional<double> d_s_minus;
  std::optional<long long> series_terms_used;
  bool clamped = false;
};

/// Wraps a raw D_S value: p_2c = (1 - d_s)/2, clamps |d_s| <= 1 + 1e-6 and flags it;
/// a larger excess throws QuadratureError.
SymmetryResult make_symmetry_result(double d_s, SymmetryMethod method);

/// A value together with the flag raised when the formula is used outside its regime.
struct ApproxValue {
  double value = 0.0;
  bool regime_warning = false;
};

/// Overlap integral of psi(x1,x2) psi*(x2,x1) divided by the integral of |psi|^2,
/// both by plane quadrature. Works for any amplitude over scaled frequencies.
SymmetryResult ds_quadrature_of(const std::function<std::complex<double>(double, double)>& amplitude,
                                const GaussForm& intensity, const GaussForm& exchange, int order);

SymmetryResult ds_quadrature(const BiphotonState& state, int order = kDefaultPlaneOrder);

SymmetryResult ds_closed_spdc(const SpdcParams& spdc);

/// Cosine modulation only; throws DegenerateStateError when the state vanishes.
SymmetryResult ds_closed_modulated(const BiphotonState& state);

inline constexpr long long kMaxSeriesTerms = 50'000'000;

/// Hermite-series parity decomposition D_S = D_S+ - D_S-. Requires finite sigma_p.
SymmetryResult ds_parity_series(const BiphotonState& state, double tol = 1e-12);

/// D_S = N^2 |int phi12|^2 for sigma_p = infinity.
double ds_separable_limit(const BiphotonState& state);

/// Small-beta resonance formula for cosine modulation at the given beta (s).
ApproxValue ds_small_beta_approx(const BiphotonState& state, double beta);

/// Default inner node count for the finite-gate integral.
int default_gate_order(const SpdcParams& spdc, double tau_f);

/// Coincidence probability with a detector gate of half-width tau_f (s).
double p2c_finite_gate(const BiphotonState& state, double tau_f, int order);

}  // namespace hom
