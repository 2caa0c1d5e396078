#pragma once

#include <complex>

#include "biphoton/gauss2d.hpp"

namespace hom {

/// Pump bandwidth sigma_p in rad/s, or the separable limit sigma_p = infinity.
class PumpWidth {
 public:
  PumpWidth() = default;
  explicit PumpWidth(double rad_per_s) : value_(rad_per_s), infinite_(false) {}
  static PumpWidth infinite() { return PumpWidth(); }

  bool is_infinite() const { return infinite_; }
  /// Throws DomainError in the separable limit.
  double value() const;

 private:
  double value_ = 0.0;
  bool infinite_ = true;
};

struct SpdcParams {
  double sigma1 = 0.0;  // rad/s
  double sigma2 = 0.0;  // rad/s
  PumpWidth sigma_p;
  double omega = 0.0;  // rad/s
  double tau1 = 0.0;   // s
  double tau2 = 0.0;   // s

  double delta_tau() const { return tau2 - tau1; }
  /// sigma_p > 0.1 Omega: the narrow-band detection model is questionable.
  bool narrowband_warning() const;
  /// Throws DomainError on non-finite or non-positive widths.
  void validate() const;
};

enum class ModulationKind { none, cosine, sine };

struct ModulationSpec {
  ModulationKind kind = ModulationKind::none;
  double beta = 0.0;  // s

  double effective_beta() const { return kind == ModulationKind::none ? 0.0 : beta; }
  double delta_l() const;
  static ModulationSpec from_delta_l(ModulationKind kind, double delta_l_m);
};

/// Parameters in units of sigma1: frequencies divided by sigma1, times multiplied by it.
struct ScaledParams {
  double r2 = 1.0;   // sigma2 / sigma1
  double rp = 1.0;   // sigma_p / sigma1, unused when separable
  bool separable = false;
  double w = 0.0;    // Omega / sigma1
  double t1 = 0.0, t2 = 0.0;
  double b = 0.0;    // beta * sigma1
  double b_omega = 0.0;  // beta * Omega
  ModulationKind kind = ModulationKind::none;

  double delta() const { return t2 - t1; }
};

ScaledParams to_scaled(const SpdcParams& spdc, const ModulationSpec& mod);

/// Envelope of |psi|^2.
GaussForm intensity_form(const ScaledParams& s);
/// Envelope of psi(x1, x2) psi*(x2, x1).
GaussForm exchange_form(const ScaledParams& s);
/// Squared normalization of the unmodulated Gaussian JSA in scaled units.
double gaussian_norm_sq(const ScaledParams& s);
/// alpha^2 / sigma1^2.
double alpha_sq_scaled(const ScaledParams& s);

class BiphotonState {
 public:
  const SpdcParams& spdc() const { return spdc_; }
  const ModulationSpec& modulation() const { return mod_; }
  const ScaledParams& scaled() const { return scaled_; }
  /// N^2 in (rad/s)^-2.
  double norm_sq() const { return norm_sq_scaled_ / (spdc_.sigma1 * spdc_.sigma1); }
  /// N^2 for the amplitude over the scaled variables.
  double norm_sq_scaled() const { return norm_sq_scaled_; }
  bool norm_from_quadrature() const { return norm_from_quadrature_; }

  /// psi as a function of x = (omega - Omega)/sigma1, normalized over dx1 dx2.
  std::complex<double> amplitude_scaled(double x1, double x2) const;
  /// Same amplitude without the normalization constant.
  std::complex<double> raw_amplitude_scaled(double x1, double x2) const;
  /// Modulation factor m(x1) of arm 1.
  double modulation_factor(double x1) const;

 private:
  friend BiphotonState normalize(const SpdcParams&, const ModulationSpec&, int);
  SpdcParams spdc_;
  ModulationSpec mod_;
  ScaledParams scaled_;
  double norm_sq_scaled_ = 0.0;
  bool norm_from_quadrature_ = false;
};

inline constexpr int kDefaultPlaneOrder = 200;

/// Builds a normalized state. Analytic normalization for none/cosine, quadrature for sine.
/// Throws DegenerateStateError when the modulation annihilates the state.
BiphotonState normalize(const SpdcParams& spdc, const ModulationSpec& mod,
                        int quad_order = kDefaultPlaneOrder);

/// psi(omega1, omega2) in SI units (amplitude per rad/s).
std::complex<double> evaluate_jsa(const BiphotonState& state, double omega1, double omega2);

/// phi12(w~) = phi1(w~ + Omega) conj(phi2(w~ + Omega)), without normalization or pump factor.
std::complex<double> phi12(const BiphotonState& state, double omega_tilde);

struct ParitySplit {
  std::complex<double> even;
  std::complex<double> odd;
};

ParitySplit phi12_parity_split(const BiphotonState& state, double omega_tilde);

struct MziDescription {
  ModulationSpec port1;  // cosine
  ModulationSpec port3;  // sine
  double path_sum = 0.0; // L1 + L2, enters only the global phase exp(i w1 L_S / 2c)
  double port3_sign = 1.0;  // sign of L2 - L1; a global sign on the sine port
};

MziDescription mzi_transform_description(double l1_m, double l2_m);

}  // namespace hom
