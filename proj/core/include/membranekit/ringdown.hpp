#pragma once

// Time-domain Langevin simulation of a single membrane mode and estimators
// that recover (omega, Gamma, Q) from the resulting displacement records.
//
// Equation of motion:
//   m x'' = -k x - m Gamma x' + F_drive(t) + F_th(t),
// with white thermal force of one-sided PSD 4 k_b T m Gamma. The linear part
// is propagated with its exact matrix exponential and the noise enters with
// the exact discrete covariance, so T = 0 runs reproduce the analytic damped
// cosine and there is no step-size bias in the stationary variance.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "membranekit/errors.hpp"
#include "membranekit/units.hpp"

namespace mkit::ringdown {

/// Noise generator used by simulate(); echoed in effective-config output.
inline constexpr std::string_view kRngAlgorithm =
    "boost::random::mt19937_64 + boost::random::normal_distribution<double> (ziggurat), "
    "Boost 1.74; two normals per step (x then v)";

struct NoDrive {
  bool operator==(const NoDrive&) const = default;
};

/// Velocity kick impulse / m_eff applied at t = 0.
struct ImpulseDrive {
  Quantity impulse = 0.0 * units::N_s;
  bool operator==(const ImpulseDrive&) const = default;
};

/// F0 sin(omega (t - t_on)) for t_on <= t < t_off.
struct SinusoidDrive {
  Quantity force = 0.0 * units::N;
  Quantity omega = 0.0 * units::rad_per_s;
  Quantity t_on = 0.0 * units::s;
  Quantity t_off = 0.0 * units::s;
  bool operator==(const SinusoidDrive&) const = default;
};

using Drive = std::variant<NoDrive, ImpulseDrive, SinusoidDrive>;

struct SimConfig {
  Quantity dt = 5e-8 * units::s;
  Quantity duration = 1e-2 * units::s;
  std::uint64_t seed = 1;
  Quantity initial_amplitude = 0.18 * units::nm;
  Quantity initial_velocity = 0.0 * units::m_per_s;
  Drive drive = NoDrive{};
  std::size_t record_decimation = 1;
  /// Linearity limit checked against initial_amplitude.
  Quantity max_linear_amplitude = 0.18 * units::nm;

  bool operator==(const SimConfig&) const = default;
};

/// Uniformly sampled displacement record in metres.
struct TimeSeries {
  double t0 = 0.0;  // s
  double dt = 0.0;  // s
  std::vector<double> samples;

  std::size_t size() const { return samples.size(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  bool operator==(const TimeSeries&) const = default;
};

struct FitResult {
  double omega_fit = 0.0;      // rad/s
  double gamma_fit = 0.0;      // 1/s, energy damping rate
  double q_fit = 0.0;          // omega_fit / gamma_fit, +inf when gamma_fit <= 0
  double amplitude_fit = 0.0;  // m; rms line amplitude for spectral fits
  double phase_fit = 0.0;      // rad
  double residual_rms = 0.0;   // m for ring-down fits, m^2/Hz for spectral fits
  double q_uncertainty = 0.0;  // one-sigma, correlation-corrected
  bool converged = false;
};

/// Validates the configuration against the oscillator; throws ConfigError.
void validate(const SimConfig& config, const Quantity& m_eff, const Quantity& k,
              const Quantity& gamma_total, Diagnostics* diag = nullptr);

/// Deterministic for a given seed. Throws ConfigError (dt above a hundredth of
/// a period, duration below 10 dt, overdamped mode) and NumericalError on a
/// non-finite state.
TimeSeries simulate(const Quantity& m_eff, const Quantity& k, const Quantity& gamma_total,
                    const Quantity& temperature, const SimConfig& config,
                    Diagnostics* diag = nullptr);

/// Least-squares fit of A exp(-Gamma t / 2) cos(omega t + phi), initialised
/// from zero-crossing and log-envelope regressions unless a guess is given.
/// Throws DomainError for records shorter than 20 periods; non-convergence is
/// reported through `converged`.
/// q_uncertainty assumes residuals are thermal motion of the fitted mode plus
/// white noise. It is well calibrated for records of a few decay times or
/// more; for records much shorter than 1 / Gamma the thermal part is one
/// random-walk realisation and the figure is indicative only.
FitResult fit_ringdown(const TimeSeries& series,
                       const std::optional<FitResult>& initial_guess = std::nullopt);

/// One-sided density spectrum (Hz -> m^2/Hz).
struct Spectrum {
  double df = 0.0;
  std::vector<double> frequency;
  std::vector<double> psd;
};

/// Hann-windowed periodogram with mean removal, normalised by sum(w^2) so
/// that sum(psd) df equals the window-weighted variance. A pure tone of
/// amplitude a integrates to a^2/2 over its main lobe (the Hann amplitude
/// correction factor is 2 for peak heights). Needs >= 256 samples.
Spectrum power_spectrum(const TimeSeries& series);

/// Integral of the spectrum over [f_lo, f_hi].
double band_power(const Spectrum& spectrum, double f_lo, double f_hi);

/// Fit of S(f) = C / ((f0^2 - f^2)^2 + (f0 f / Q)^2) around the dominant
/// peak, least squares in log S. Throws ResolutionError unless the bin width
/// is below a tenth of the linewidth; use fit_ringdown for such lines.
FitResult lorentzian_fit(const Spectrum& spectrum);

/// `# t0=<s> dt=<s> n=<count>` header then one displacement per line.
void write_trace(std::ostream& out, const TimeSeries& series);
TimeSeries read_trace(std::istream& in);

}  // namespace mkit::ringdown
