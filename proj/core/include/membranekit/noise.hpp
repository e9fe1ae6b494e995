#pragma once

// Thermal force-noise floor, displacement noise spectra, and the separation at
// which a force model reaches unit signal-to-noise.

#include <functional>

#include "membranekit/casimir.hpp"
#include "membranekit/units.hpp"

namespace mkit::noise {

struct NoiseResult {
  Quantity s_f;         // N/sqrt(Hz)
  Quantity s_x_peak;    // m/sqrt(Hz)
  Quantity bandwidth;   // Hz
  double snr = 0.0;     // amplitude S/N of the supplied signal force
};

/// Thermal force noise floor S_f = sqrt(4 k k_b T / (omega0 Q)).
Quantity force_noise_density(const Quantity& k, const Quantity& temperature,
                             const Quantity& omega0, const Quantity& q);

/// One-sided displacement PSD in m^2/Hz:
///   S_x = S_f^2 / (m^2 [(w0^2 - w^2)^2 + (w0 w / Q)^2]),  k = m w0^2.
/// Integrates over f = w / 2pi to k_b T / k.
Quantity displacement_noise_psd(const Quantity& omega, const Quantity& m_eff,
                                const Quantity& omega0, const Quantity& q,
                                const Quantity& temperature);

/// snr_target s_f sqrt(bandwidth).
Quantity min_detectable_force(const Quantity& s_f, const Quantity& bandwidth,
                              const Quantity& snr_target);

/// Force as a function of separation (SI metres -> newtons), strictly
/// decreasing.
using ForceModel = std::function<double(double separation_m)>;

/// Separation where force(d) / (s_f sqrt(1 Hz)) = 1, found by bisection on a
/// geometric bracket. Works for any monotone force model.
Quantity snr_unity_distance(const ForceModel& force, const Quantity& s_f);

/// Same for the thermal sphere-plane force with radius R at temperature T.
Quantity snr_unity_distance(const Quantity& radius, const Quantity& temperature,
                            const Quantity& s_f,
                            casimir::ThermalCoefficient coefficient =
                                casimir::ThermalCoefficient::kStated);

/// Closed form sqrt(c R k_b T / s_f) of the thermal sphere-plane S/N = 1
/// separation; used to cross-check the root finder.
Quantity snr_unity_distance_closed_form(const Quantity& radius, const Quantity& temperature,
                                        const Quantity& s_f,
                                        casimir::ThermalCoefficient coefficient =
                                            casimir::ThermalCoefficient::kStated);

/// Noise floor, peak displacement noise, and the S/N of `signal` in
/// `bandwidth`.
NoiseResult evaluate(const Quantity& k, const Quantity& m_eff, const Quantity& temperature,
                     const Quantity& omega0, const Quantity& q, const Quantity& signal,
                     const Quantity& bandwidth = 1.0 * units::Hz);

}  // namespace mkit::noise
