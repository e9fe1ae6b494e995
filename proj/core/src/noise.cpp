#include "membranekit/noise.hpp"

#include <cmath>

#include "membranekit/constants.hpp"
#include "membranekit/roots.hpp"
#include "detail/checks.hpp"

namespace mkit::noise {

using detail::nonnegative;
using detail::positive;

Quantity force_noise_density(const Quantity& k, const Quantity& temperature,
                             const Quantity& omega0, const Quantity& q) {
  const double kk = positive(k, dims::kStiffness, "spring constant");
  const double t = positive(temperature, dims::kTemperature, "temperature");
  const double w0 = positive(omega0, dims::kFrequency, "omega0");
  const double qq = positive(q, dims::kNone, "Q");
  return std::sqrt(4.0 * kk * constants::kBoltzmann * t / (w0 * qq)) * units::N_per_rtHz;
}

Quantity displacement_noise_psd(const Quantity& omega, const Quantity& m_eff,
                                const Quantity& omega0, const Quantity& q,
                                const Quantity& temperature) {
  const double w = positive(omega, dims::kFrequency, "omega");
  const double m = positive(m_eff, dims::kMass, "effective mass");
  const double w0 = positive(omega0, dims::kFrequency, "omega0");
  const double qq = positive(q, dims::kNone, "Q");
  const double t = positive(temperature, dims::kTemperature, "temperature");
  const double k = m * w0 * w0;
  const double sf2 = 4.0 * k * constants::kBoltzmann * t / (w0 * qq);
  const double detune = w0 * w0 - w * w;
  const double loss = w0 * w / qq;
  return sf2 / (m * m * (detune * detune + loss * loss)) * units::m2_per_Hz;
}

Quantity min_detectable_force(const Quantity& s_f, const Quantity& bandwidth,
                              const Quantity& snr_target) {
  const double sf = positive(s_f, dims::kForceNoiseDensity, "force noise density");
  const double bw = positive(bandwidth, dims::kFrequency, "bandwidth");
  const double snr = nonnegative(snr_target, dims::kNone, "snr target");
  return snr * sf * std::sqrt(bw) * units::N;
}

Quantity snr_unity_distance(const ForceModel& force, const Quantity& s_f) {
  const double sf = positive(s_f, dims::kForceNoiseDensity, "force noise density");
  // Amplitude S/N in a 1 Hz bandwidth; log of the ratio is linear-ish in log d.
  auto excess = [&](double d) { return std::log(force(d) / sf); };
  return solve_monotone(excess, 1e-6) * units::m;
}

Quantity snr_unity_distance(const Quantity& radius, const Quantity& temperature,
                            const Quantity& s_f, casimir::ThermalCoefficient coefficient) {
  positive(radius, dims::kLength, "sphere radius");
  positive(temperature, dims::kTemperature, "temperature");
  const ForceModel model = [&](double d) {
    return casimir::thermal_sphere_plane(radius, temperature, d * units::m, coefficient).value();
  };
  return snr_unity_distance(model, s_f);
}

Quantity snr_unity_distance_closed_form(const Quantity& radius, const Quantity& temperature,
                                        const Quantity& s_f,
                                        casimir::ThermalCoefficient coefficient) {
  const double r = positive(radius, dims::kLength, "sphere radius");
  const double t = positive(temperature, dims::kTemperature, "temperature");
  const double sf = positive(s_f, dims::kForceNoiseDensity, "force noise density");
  return std::sqrt(casimir::coefficient_value(coefficient) * r * constants::kBoltzmann * t / sf) *
         units::m;
}

NoiseResult evaluate(const Quantity& k, const Quantity& m_eff, const Quantity& temperature,
                     const Quantity& omega0, const Quantity& q, const Quantity& signal,
                     const Quantity& bandwidth) {
  NoiseResult result;
  result.s_f = force_noise_density(k, temperature, omega0, q);
  result.s_x_peak = sqrt(displacement_noise_psd(omega0, m_eff, omega0, q, temperature));
  result.bandwidth = bandwidth;
  const Quantity floor = min_detectable_force(result.s_f, bandwidth, 1.0);
  result.snr = (nonnegative(signal, dims::kForce, "signal force") * units::N / floor).value();
  return result;
}

}  // namespace mkit::noise
