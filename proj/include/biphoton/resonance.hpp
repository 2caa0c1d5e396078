#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biphoton/jsa.hpp"
#include "biphoton/schmidt.hpp"

namespace hom {

struct ResonanceReport {
  int order_n = 0;
  double beta_seed = 0.0;    // pi (2n+1) / (2 Omega)
  double beta_center = 0.0;  // refined D_S minimum
  double ds_at_center = 0.0;
  double k0 = 1.0;
  double k_at_center = 1.0;

  // D_S dip: crossing of D_S = -1/2 on the right flank
  double hwhm_beta = 0.0;
  double hwhm_epsilon = 0.0;
  double hwhm_delta_l = 0.0;
  // D_S dip: crossing of the half-prominence level on the right flank
  std::optional<double> ds_half_prominence_beta;

  // K peak: crossing of (K0 + K_peak)/2 on the right flank
  std::optional<double> k_hwhm_beta;
  std::optional<double> k_hwhm_delta_l;
  std::optional<double> wing_dip_beta;
  std::optional<double> wing_dip_depth;  // min K in the wing minus K0

  std::string hwhm_convention = "ds: D_S=-1/2 crossing; k: half prominence (K0+K_peak)/2";
};

/// Refines the n-th antibunching resonance of the cosine-modulated family built on `spdc`.
/// The search bracket is +-10% of the seed, narrowed to stay between neighbouring resonances.
ResonanceReport locate_resonance(const SpdcParams& spdc, int n, bool with_k = true);

/// Fills the D_S half-width fields. Throws DomainError when D_S never reaches -1/2.
ResonanceReport hwhm_ds(const SpdcParams& spdc, ResonanceReport report);

/// Fills ds_half_prominence_beta only; valid for shallow dips too.
ResonanceReport ds_half_prominence(const SpdcParams& spdc, ResonanceReport report);

/// Fills the K half-width and wing-dip fields using the purity-based Schmidt number.
ResonanceReport hwhm_k(const SpdcParams& spdc, ResonanceReport report);

/// Closed-form D_S of the cosine-modulated state at beta (s).
double ds_cosine(const SpdcParams& spdc, double beta);

/// Small-beta estimate of epsilon at D_S = -1/2: arccos(1 - beta0^2 xi^2 / 3) / pi.
double epsilon_estimate(const SpdcParams& spdc);

struct DsVsKRow {
  double k = 0.0;
  PumpWidth sigma_p;
  double ds = 0.0;
  double slope = 0.0;  // dD_S/dK, one-sided toward the next grid point (last row: backward)
};

struct DsVsKTable {
  std::vector<DsVsKRow> rows;
  bool monotone_non_increasing = true;
  double slope_threshold = 0.0;
  std::optional<double> knee_k;  // first K where |slope| falls below the threshold
};

inline constexpr double kDefaultKneeSlope = 0.002;

DsVsKTable ds_vs_k_at_resonance(double sigma1, double sigma2, const std::vector<double>& k_grid, double omega,
                                double slope_threshold = kDefaultKneeSlope);

enum class ExtremumKind { maximum, minimum };

/// Indices of strict interior local extrema whose topographic prominence is at least
/// `min_prominence_fraction` of the series range (max - min).
std::vector<std::size_t> prominent_extrema(const std::vector<double>& values, ExtremumKind kind,
                                           double min_prominence_fraction = 0.05);

/// Equivalent descriptions of an MZI delay.
struct DelayRepresentations {
  double beta = 0.0;          // s
  double delta_l = 0.0;       // m, 2 c beta
  int order_n = 0;            // nearest resonance
  double epsilon = 0.0;       // 2 Omega beta / pi - (2n + 1)
  double lambda_fraction = 0.0;  // delta_l / lambda, lambda = 2 pi c / Omega
};

DelayRepresentations from_beta(double beta, double omega);
DelayRepresentations from_delta_l(double delta_l, double omega);
DelayRepresentations from_epsilon(double epsilon, int n, double omega);

}  // namespace hom
