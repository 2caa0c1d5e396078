#pragma once

#include <numbers>

namespace hom {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline constexpr double thz_to_angular(double thz) { return 2.0 * kPi * thz * 1e12; }
inline constexpr double angular_to_thz(double w) { return w / (2.0 * kPi * 1e12); }

inline constexpr double fs(double v) { return v * 1e-15; }
inline constexpr double as(double v) { return v * 1e-18; }
inline constexpr double nm(double v) { return v * 1e-9; }

/// First antibunching resonance pi/(2 Omega).
inline constexpr double beta0(double omega) { return kPi / (2.0 * omega); }

/// MZI path difference and time-delay parameter: dL = 2 c beta.
inline constexpr double beta_to_delta_l(double beta) { return 2.0 * kSpeedOfLight * beta; }
inline constexpr double delta_l_to_beta(double dl) { return dl / (2.0 * kSpeedOfLight); }

}  // namespace hom
