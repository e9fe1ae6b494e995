#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "generators.hpp"
#include "membranekit/ringdown.hpp"
#include "oracle.hpp"
#include "scenarios.hpp"

using namespace mkit;
using namespace mkit::ringdown;
using scenario::kMass;
using scenario::kOmega0;
using scenario::kPeriod;
using scenario::kStiffness;

namespace {

double rel(double a, double b) { return std::fabs(a / b - 1.0); }

TimeSeries sinusoid(double amplitude, double f, double dt, std::size_t n, double decay = 0.0) {
  TimeSeries s;
  s.dt = dt;
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    s.samples[i] = amplitude * std::exp(-0.5 * decay * t) * std::cos(2.0 * oracle::kPi * f * t + 0.3);
  }
  return s;
}

Spectrum synthetic_lorentzian(double f0, double q, double df, std::size_t bins) {
  Spectrum s;
  s.df = df;
  for (std::size_t k = 0; k < bins; ++k) {
    const double f = df * static_cast<double>(k);
    const double detune = f0 * f0 - f * f;
    const double loss = f0 * f / q;
    s.frequency.push_back(f);
    s.psd.push_back(1e-3 / (detune * detune + loss * loss));
  }
  return s;
}

}  // namespace

TEST(Simulate, ZeroTemperatureMatchesAnalyticDampedCosine) {
  const double q = 1e3, g = kOmega0 / q, a = 0.1e-9;
  SimConfig cfg;
  cfg.dt = kPeriod / 100.0 * units::s;
  cfg.duration = 200.0 * kPeriod * units::s;
  cfg.initial_amplitude = a * units::m;
  const auto s = scenario::run(q, 0.0, cfg);
  const double wd = std::sqrt(kOmega0 * kOmega0 - 0.25 * g * g);
  for (std::size_t i = 0; i < s.size(); i += 37) {
    const double t = s.time(i);
    const double exact = a * std::exp(-0.5 * g * t) * (std::cos(wd * t) + 0.5 * g / wd * std::sin(wd * t));
    EXPECT_NEAR(s.samples[i], exact, 1e-9 * a) << i;
  }
}

TEST(Simulate, EnvelopeDecayWithinPermille) {
  EXPECT_LT(scenario::envelope_error(1e3, 10.0), 1e-3);
}

TEST(Simulate, UndampedEnergyConserved) {
  EXPECT_LT(scenario::energy_drift(1e4), 1e-6);
}

TEST(Simulate, EquipartitionAtReducedQ) {
  for (double q : {1e2, 1e3}) {
    EXPECT_LT(std::fabs(scenario::equipartition_ratio(q, 5000.0, 11) - 1.0), 0.05) << "Q=" << q;
  }
}

TEST(Simulate, DeterministicGivenSeed) {
  const auto a = scenario::noisy_ringdown(1e3, 2.0, 42);
  const auto b = scenario::noisy_ringdown(1e3, 2.0, 42);
  const auto c = scenario::noisy_ringdown(1e3, 2.0, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Simulate, DecimationKeepsEveryNthStep) {
  SimConfig cfg;
  cfg.dt = kPeriod / 100.0 * units::s;
  cfg.duration = 50.0 * kPeriod * units::s;
  const auto full = scenario::run(1e3, 0.0, cfg);
  cfg.record_decimation = 10;
  const auto thin = scenario::run(1e3, 0.0, cfg);
  ASSERT_EQ(thin.size(), (full.size() - 1) / 10 + 1);
  EXPECT_DOUBLE_EQ(thin.dt, 10.0 * full.dt);
  for (std::size_t i = 0; i < thin.size(); ++i) EXPECT_EQ(thin.samples[i], full.samples[10 * i]);
}

TEST(Simulate, ImpulseDriveSetsInitialVelocity) {
  SimConfig cfg;
  cfg.dt = kPeriod / 100.0 * units::s;
  cfg.duration = 10.0 * kPeriod * units::s;
  cfg.initial_amplitude = 0.0 * units::m;
  const double p = 1e-20;
  cfg.drive = ImpulseDrive{p * units::N_s};
  const auto s = scenario::run(1e9, 0.0, cfg);
  // Quarter period later x = v0 / omega0.
  EXPECT_NEAR(s.samples[25], p / kMass / kOmega0, 1e-6 * p / kMass / kOmega0);
}

TEST(Simulate, SinusoidDriveOnResonanceGrowsLinearly) {
  SimConfig cfg;
  cfg.dt = kPeriod / 100.0 * units::s;
  cfg.duration = 100.0 * kPeriod * units::s;
  cfg.initial_amplitude = 0.0 * units::m;
  const double f = 1e-15;
  cfg.drive = SinusoidDrive{f * units::N, kOmega0 * units::rad_per_s, 0.0 * units::s, 1.0 * units::s};
  const auto s = scenario::run(1e12, 0.0, cfg);
  // x(t) -> (F / 2 m w0) t (-cos w0 t) for an undamped resonant drive.
  double peak = 0.0;
  for (std::size_t i = s.size() - 100; i < s.size(); ++i) peak = std::max(peak, std::fabs(s.samples[i]));
  const double expected = f / (2.0 * kMass * kOmega0) * 100.0 * kPeriod;
  EXPECT_LT(rel(peak, expected), 0.02);
}

TEST(Simulate, ConfigErrors) {
  SimConfig cfg;
  cfg.dt = kPeriod / 50.0 * units::s;
  EXPECT_THROW(scenario::run(1e3, 0.0, cfg), ConfigError);
  cfg.dt = kPeriod / 100.0 * units::s;
  cfg.duration = 5.0 * cfg.dt;
  EXPECT_THROW(scenario::run(1e3, 0.0, cfg), ConfigError);
  cfg.duration = 1e-3 * units::s;
  EXPECT_THROW(scenario::run(0.4, 0.0, cfg), ConfigError);
  cfg.record_decimation = 0;
  EXPECT_THROW(scenario::run(1e3, 0.0, cfg), ConfigError);
  cfg.record_decimation = 1;
  cfg.drive = SinusoidDrive{1e-15 * units::N, kOmega0 * units::rad_per_s, 1.0 * units::s, 0.5 * units::s};
  EXPECT_THROW(scenario::run(1e3, 0.0, cfg), ConfigError);
}

TEST(Simulate, LargeAmplitudeWarns) {
  SimConfig cfg;
  cfg.duration = 20.0 * kPeriod * units::s;
  cfg.initial_amplitude = 1.0 * units::nm;
  Diagnostics diag;
  simulate(kMass * units::kg, kStiffness * units::N_per_m, 1.0 * units::per_s, 0.0 * units::K, cfg, &diag);
  EXPECT_EQ(diag.warnings().size(), 1u);
}

TEST(FitRingdown, NoiselessHighQ) {
  const auto fit = fit_ringdown(scenario::clean_ringdown(1e6, 2000.0));
  EXPECT_TRUE(fit.converged);
  EXPECT_LT(rel(fit.q_fit, 1e6), 0.01);
  EXPECT_LT(rel(fit.omega_fit, std::sqrt(kOmega0 * kOmega0 - 0.25 * std::pow(kOmega0 / 1e6, 2))), 1e-9);
  EXPECT_LT(rel(fit.amplitude_fit, 0.18e-9), 1e-6);
  EXPECT_NEAR(fit.q_fit, fit.omega_fit / fit.gamma_fit, 1e-9 * fit.q_fit);
}

TEST(FitRingdown, NoiselessModerateQIsExact) {
  const auto fit = fit_ringdown(scenario::clean_ringdown(1e3, 2000.0));
  EXPECT_TRUE(fit.converged);
  EXPECT_LT(rel(fit.q_fit, 1e3 * std::sqrt(1.0 - 0.25e-6)), 1e-8);
}

TEST(FitRingdown, UndampedSinusoidHasNoDamping) {
  const double f = 1e5, dt = 1.0 / (20.0 * f);
  const auto fit = fit_ringdown(sinusoid(1e-10, f, dt, 20000));
  EXPECT_TRUE(fit.converged);
  // Q_max detectable over a 1000-period record is of order omega T.
  const double q_max = 2.0 * oracle::kPi * f * dt * 20000.0;
  EXPECT_LT(std::fabs(fit.gamma_fit), 1e-3 * fit.omega_fit / q_max);
}

TEST(FitRingdown, TooShortRecordIsDomainError) {
  EXPECT_THROW(fit_ringdown(sinusoid(1e-10, 1e5, 5e-7, 300)), DomainError);
}

TEST(FitRingdown, ThermalNoiseMedianOverHundredSeeds) {
  const auto stats = scenario::noisy_fit_stats(1e3, 100);
  EXPECT_LT(std::fabs(stats.median_error), 0.02);
  EXPECT_LT(std::fabs(stats.mean_error), 0.02);
  EXPECT_EQ(stats.unconverged, 0);
  EXPECT_GT(stats.rms_pull, 0.75);
  EXPECT_LT(stats.rms_pull, 1.33);
}

TEST(FitRingdown, UncertaintyCalibratedAtLinearLimit) {
  // 0.18 nm is ~11 thermal amplitudes: the fit is noise-limited, but the
  // reported uncertainty must still describe the scatter.
  const auto stats = scenario::noisy_fit_stats(1e3, 100, 10.0, 0.18e-9);
  EXPECT_EQ(stats.unconverged, 0);
  EXPECT_GT(stats.rms_pull, 0.75);
  EXPECT_LT(stats.rms_pull, 1.33);
}

TEST(FitRingdown, InitialGuessIsHonoured) {
  const auto series = scenario::clean_ringdown(1e4, 500.0);
  const auto first = fit_ringdown(series);
  FitResult guess = first;
  guess.gamma_fit *= 1.01;
  const auto second = fit_ringdown(series, guess);
  EXPECT_LT(rel(second.q_fit, first.q_fit), 1e-8);
}

TEST(PowerSpectrum, ParsevalOnThermalRecord) {
  const auto s = scenario::thermal_record(10.0, 1e5, 5);
  const auto spec = power_spectrum(s);
  double total = 0.0;
  for (double p : spec.psd) total += p;
  total *= spec.df;
  double mean = 0.0;
  for (double x : s.samples) mean += x;
  mean /= static_cast<double>(s.size());
  double var = 0.0;
  for (double x : s.samples) var += (x - mean) * (x - mean);
  var /= static_cast<double>(s.size());
  EXPECT_LT(rel(total, var), 0.01);
}

TEST(PowerSpectrum, ParsevalOnWhiteNoise) {
  std::mt19937_64 eng(3);
  std::normal_distribution<double> normal(0.0, 2.0);
  TimeSeries s;
  s.dt = 1e-3;
  for (int i = 0; i < 1 << 16; ++i) s.samples.push_back(normal(eng));
  const auto spec = power_spectrum(s);
  double mean = 0.0;
  for (double x : s.samples) mean += x;
  mean /= static_cast<double>(s.size());
  double var = 0.0;
  for (double x : s.samples) var += (x - mean) * (x - mean);
  var /= static_cast<double>(s.size());
  EXPECT_LT(rel(band_power(spec, 0.0, 1e9), var), 0.01);
  // Flat at 2 sigma^2 / fs. Bins are chi^2_2 with unit relative scatter,
  // correlated over 1.5 bins by the Hann window; allow four standard errors.
  const double level = 2.0 * 4.0 * s.dt;
  for (auto [lo, hi] : {std::pair{10.0, 100.0}, std::pair{100.0, 400.0}}) {
    const double p = band_power(spec, lo, hi) / (hi - lo);
    const double bins = (hi - lo) / spec.df;
    EXPECT_LT(rel(p, level), 4.0 * std::sqrt(1.5 / bins)) << lo;
  }
}

TEST(PowerSpectrum, SinusoidLobeIntegratesToHalfSquare) {
  const double a = 3e-10, f = 1234.5, dt = 1e-5;
  const auto spec = power_spectrum(sinusoid(a, f, dt, 1 << 15));
  const double lobe = band_power(spec, f - 3.0 * spec.df, f + 3.0 * spec.df);
  EXPECT_LT(rel(lobe, 0.5 * a * a), 0.05);
}

TEST(PowerSpectrum, ThermalPeakWithinOneBin) {
  // Q = 1e4 over 2000 periods: the line is a fifth of a bin wide.
  const auto spec = power_spectrum(scenario::thermal_record(1e4, 2000.0, 9));
  std::size_t peak = 1;
  for (std::size_t k = 1; k < spec.psd.size(); ++k) {
    if (spec.psd[k] > spec.psd[peak]) peak = k;
  }
  EXPECT_LE(std::fabs(spec.frequency[peak] - kOmega0 / (2.0 * oracle::kPi)), spec.df);
}

TEST(PowerSpectrum, TooShortIsDomainError) {
  EXPECT_THROW(power_spectrum(sinusoid(1.0, 10.0, 1e-3, 100)), DomainError);
}

TEST(LorentzianFit, SyntheticQThousand) {
  const auto fit = lorentzian_fit(synthetic_lorentzian(1e5, 1e3, 1.0, 300000));
  EXPECT_LT(rel(fit.q_fit, 1e3), 0.02);
  EXPECT_LT(rel(fit.omega_fit, 2.0 * oracle::kPi * 1e5), 1e-6);
  // Linewidth-Q identity.
  EXPECT_NEAR(fit.gamma_fit, fit.omega_fit / fit.q_fit, 1e-12 * fit.gamma_fit);
}

TEST(LorentzianFit, CoarseHighQIsResolutionError) {
  EXPECT_THROW(lorentzian_fit(synthetic_lorentzian(1e5, 1e7, 1.0, 300000)), ResolutionError);
}

TEST(LorentzianFit, AgreesWithRingdownAtQThousand) {
  const auto a = scenario::estimator_agreement(1e3, 21);
  EXPECT_LE(a.difference, 3.0 * a.combined_sigma)
      << "spectral " << a.spectral.q_fit << " +- " << a.spectral.q_uncertainty << ", ring-down "
      << a.ringdown.q_fit << " +- " << a.ringdown.q_uncertainty;
  EXPECT_LT(rel(a.spectral.q_fit, 1e3), 0.1);
  EXPECT_LT(rel(a.ringdown.q_fit, 1e3), 0.1);
}

TEST(TraceIo, RoundTripIsExact) {
  const auto s = scenario::noisy_ringdown(1e3, 0.5, 3);
  std::stringstream buf;
  write_trace(buf, s);
  EXPECT_EQ(read_trace(buf), s);
}

TEST(TraceIo, MalformedInput) {
  std::istringstream empty("");
  EXPECT_THROW(read_trace(empty), ValidationError);
  std::istringstream count("# t0=0 dt=1e-6 n=3\n1\n2\n");
  EXPECT_THROW(read_trace(count), ValidationError);
  std::istringstream junk("# t0=0 dt=1e-6 n=1\nabc\n");
  EXPECT_THROW(read_trace(junk), ValidationError);
  std::istringstream nodt("# t0=0 n=1\n1\n");
  EXPECT_THROW(read_trace(nodt), ValidationError);
}

TEST(SimulateProperty, ZeroTemperaturePathIsLinearInInitialState) {
  gen::Source src(701);
  for (int i = 0; i < 20; ++i) {
    const double q = src.log_uniform(10.0, 1e6);
    const double a = src.log_uniform(1e-12, 1e-10);
    const double scale = src.uniform(0.1, 1.5);
    SimConfig cfg;
    cfg.dt = kPeriod / 100.0 * units::s;
    cfg.duration = 30.0 * kPeriod * units::s;
    cfg.initial_amplitude = a * units::m;
    const auto base = scenario::run(q, 0.0, cfg);
    cfg.initial_amplitude = a * scale * units::m;
    const auto scaled = scenario::run(q, 0.0, cfg);
    for (std::size_t k = 0; k < base.size(); k += 97) {
      EXPECT_NEAR(scaled.samples[k], scale * base.samples[k], 1e-12 * a);
    }
  }
}
