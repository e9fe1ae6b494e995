#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <numbers>

#include "detail/checks.hpp"
#include "detail/format.hpp"
#include "membranekit/constants.hpp"
#include "membranekit/ringdown.hpp"

namespace mkit::ringdown {

namespace {

using detail::nonnegative;
using detail::positive;

struct Oscillator {
  double m = 0.0;
  double k = 0.0;
  double gamma = 0.0;
  double omega0 = 0.0;
};

Oscillator make_oscillator(const Quantity& m_eff, const Quantity& k, const Quantity& gamma_total) {
  Oscillator osc;
  osc.m = positive(m_eff, dims::kMass, "effective mass");
  osc.k = positive(k, dims::kStiffness, "spring constant");
  osc.gamma = nonnegative(gamma_total, dims::kFrequency, "damping rate");
  osc.omega0 = std::sqrt(osc.k / osc.m);
  return osc;
}

// Exact propagator of (x, v) over a time h for the underdamped oscillator.
struct Propagator {
  double xx, xv, vx, vv;
};

Propagator propagator(const Oscillator& osc, double h) {
  const double a = 0.5 * osc.gamma;
  const double wd = std::sqrt(osc.omega0 * osc.omega0 - a * a);
  const double decay = std::exp(-a * h);
  const double c = std::cos(wd * h);
  const double s = std::sin(wd * h);
  return {decay * (c + a * s / wd), decay * s / wd, -decay * osc.omega0 * osc.omega0 * s / wd,
          decay * (c - a * s / wd)};
}

}  // namespace

void validate(const SimConfig& config, const Quantity& m_eff, const Quantity& k,
              const Quantity& gamma_total, Diagnostics* diag) {
  const Oscillator osc = make_oscillator(m_eff, k, gamma_total);
  const double dt = config.dt.require(dims::kTime, "dt");
  const double duration = config.duration.require(dims::kTime, "duration");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  const double period = 2.0 * std::numbers::pi / osc.omega0;
  if (dt > period / 100.0 * (1.0 + 1e-12)) {
    throw ConfigError("dt must not exceed 1/100 of the oscillation period (" +
                      detail::format_double(period / 100.0) + " s)");
  }
  if (!(duration >= 10.0 * dt)) throw ConfigError("duration must be at least 10 dt");
  if (!(osc.gamma < 2.0 * osc.omega0)) throw ConfigError("mode is not underdamped (Q <= 1/2)");
  if (config.record_decimation < 1) throw ConfigError("record_decimation must be >= 1");
  const double x0 = config.initial_amplitude.require(dims::kLength, "initial_amplitude");
  config.initial_velocity.require(dims::kVelocity, "initial_velocity");
  const double limit =
      config.max_linear_amplitude.require(dims::kLength, "max_linear_amplitude");
  if (std::fabs(x0) > limit) {
    warn(diag, "initial amplitude " + config.initial_amplitude.to_string() +
                   " exceeds the linear-response limit " + config.max_linear_amplitude.to_string());
  }
  if (const auto* kick = std::get_if<ImpulseDrive>(&config.drive)) {
    kick->impulse.require(dims::kMomentum, "drive impulse");
  } else if (const auto* sine = std::get_if<SinusoidDrive>(&config.drive)) {
    sine->force.require(dims::kForce, "drive force");
    positive(sine->omega, dims::kFrequency, "drive omega");
    const double on = sine->t_on.require(dims::kTime, "drive t_on");
    const double off = sine->t_off.require(dims::kTime, "drive t_off");
    if (!(off >= on)) throw ConfigError("drive t_off must not precede t_on");
  }
}

TimeSeries simulate(const Quantity& m_eff, const Quantity& k, const Quantity& gamma_total,
                    const Quantity& temperature, const SimConfig& config, Diagnostics* diag) {
  validate(config, m_eff, k, gamma_total, diag);
  const Oscillator osc = make_oscillator(m_eff, k, gamma_total);
  const double temp = nonnegative(temperature, dims::kTemperature, "temperature");
  const double dt = config.dt.value();
  const auto steps = static_cast<std::uint64_t>(std::llround(config.duration.value() / dt));
  const std::size_t decimation = config.record_decimation;

  const Propagator step = propagator(osc, dt);

  // Stationary covariance diag(kT/k, kT/m); exact step covariance is
  // S_inf - P S_inf P^T.
  const double var_x = constants::kBoltzmann * temp / osc.k;
  const double var_v = constants::kBoltzmann * temp / osc.m;
  const double cxx = var_x - (step.xx * step.xx * var_x + step.xv * step.xv * var_v);
  const double cxv = -(step.xx * step.vx * var_x + step.xv * step.vv * var_v);
  const double cvv = var_v - (step.vx * step.vx * var_x + step.vv * step.vv * var_v);
  const bool noisy = temp > 0.0 && osc.gamma > 0.0 && cxx > 0.0;
  double l00 = 0.0, l10 = 0.0, l11 = 0.0;
  if (noisy) {
    l00 = std::sqrt(cxx);
    l10 = cxv / l00;
    l11 = std::sqrt(std::max(cvv - l10 * l10, 0.0));
  }

  // Drive force integrated with the midpoint rule through the half-step
  // propagator.
  const SinusoidDrive* sine = std::get_if<SinusoidDrive>(&config.drive);
  const Propagator half = propagator(osc, 0.5 * dt);
  double f_amp = 0.0, f_omega = 0.0, t_on = 0.0, t_off = 0.0;
  if (sine != nullptr) {
    f_amp = sine->force.value() / osc.m * dt;
    f_omega = sine->omega.value();
    t_on = sine->t_on.value();
    t_off = sine->t_off.value();
  }

  double x = config.initial_amplitude.value();
  double v = config.initial_velocity.value();
  if (const auto* kick = std::get_if<ImpulseDrive>(&config.drive)) {
    v += kick->impulse.value() / osc.m;
  }

  boost::random::mt19937_64 engine(config.seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);

  TimeSeries series;
  series.t0 = 0.0;
  series.dt = dt * static_cast<double>(decimation);
  series.samples.reserve(static_cast<std::size_t>(steps / decimation) + 1);
  series.samples.push_back(x);

  std::size_t since_record = 0;
  for (std::uint64_t i = 0; i < steps; ++i) {
    double nx = step.xx * x + step.xv * v;
    double nv = step.vx * x + step.vv * v;
    if (sine != nullptr) {
      const double tm = (static_cast<double>(i) + 0.5) * dt;
      if (tm >= t_on && tm < t_off) {
        const double dv = f_amp * std::sin(f_omega * (tm - t_on));
        nx += half.xv * dv;
        nv += half.vv * dv;
      }
    }
    if (noisy) {
      const double z1 = normal(engine);
      const double z2 = normal(engine);
      nx += l00 * z1;
      nv += l10 * z1 + l11 * z2;
    }
    x = nx;
    v = nv;
    if (++since_record == decimation) {
      since_record = 0;
      if (!std::isfinite(x) || !std::isfinite(v)) {
        throw NumericalError("non-finite oscillator state at t = " +
                             detail::format_double(static_cast<double>(i + 1) * dt) + " s (x = " +
                             detail::format_double(x) + ", v = " + detail::format_double(v) + ")");
      }
      series.samples.push_back(x);
    }
  }
  return series;
}

}  // namespace mkit::ringdown
