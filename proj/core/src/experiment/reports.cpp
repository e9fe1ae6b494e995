#include <cmath>
#include <numbers>

#include "detail/format.hpp"
#include "membranekit/casimir.hpp"
#include "membranekit/experiment.hpp"
#include "membranekit/helium.hpp"
#include "membranekit/noise.hpp"
#include "membranekit/readout.hpp"

namespace mkit::experiment {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void add(Report& r, std::string name, const Quantity& q, std::string unit) {
  r.entries.push_back({std::move(name), q.value(), std::move(unit)});
}

void add(Report& r, std::string name, double v, std::string unit) {
  r.entries.push_back({std::move(name), v, std::move(unit)});
}

// Published membrane parameters used for the headline noise-floor figures.
struct ReferenceScenario {
  Quantity k = 30.0 * units::N_per_m;
  Quantity omega0 = kTwoPi * 1e5 * units::rad_per_s;
};

casimir::SpherePlaneGeometry geometry_or_default(const ExperimentConfig& c) {
  return c.geometry ? *c.geometry : casimir::SpherePlaneGeometry{};
}

}  // namespace

Report noise_report(const ExperimentConfig& config) {
  Report r;
  r.title = "thermal force noise";
  Diagnostics diag;
  membrane::validate(config.membrane, &diag);
  const OperatingPoint op = operating_point(config);
  const auto result =
      noise::evaluate(op.k, op.m_eff, op.temperature, op.omega0, Quantity(op.q_total), 0.0 * units::N);
  add(r, "k", op.k, "N/m");
  add(r, "m_eff", op.m_eff, "kg");
  add(r, "f0", op.f0, "Hz");
  add(r, "omega0", op.omega0, "rad/s");
  add(r, "temperature", op.temperature, "K");
  add(r, "q_total", op.q_total, "1");
  add(r, "gamma_total", op.gamma_total, "1/s");
  add(r, "s_f", op.s_f, "N/Hz^1/2");
  add(r, "s_x_peak", result.s_x_peak, "m/Hz^1/2");
  add(r, "min_detectable_force_1Hz",
      noise::min_detectable_force(op.s_f, 1.0 * units::Hz, Quantity(1.0)), "N");
  add(r, "x_rms_thermal", membrane::thermal_rms_amplitude(op.k, op.temperature), "m");

  const ReferenceScenario ref;
  add(r, "reference_300K.s_f.recomputed",
      noise::force_noise_density(ref.k, 300.0 * units::K, ref.omega0, Quantity(1e6)), "N/Hz^1/2");
  add(r, "reference_300K.s_f.paper_stated", 7e-16, "N/Hz^1/2");
  add(r, "reference_0.3K.s_f.recomputed",
      noise::force_noise_density(ref.k, 0.3 * units::K, ref.omega0, Quantity(1e7)), "N/Hz^1/2");
  add(r, "reference_0.3K.s_f.paper_stated", 7e-18, "N/Hz^1/2");

  if (config.geometry) {
    add(r, "snr_unity_d.recomputed",
        noise::snr_unity_distance(config.geometry->radius, op.temperature, op.s_f, config.coefficient),
        "m");
    add(r, "snr_unity_d.paper_stated", 26e-6, "m");
  }
  r.warnings = diag.warnings();
  return r;
}

Report casimir_report(const ExperimentConfig& config) {
  Report r;
  r.title = "sphere-plane Casimir forces";
  const auto geometry = geometry_or_default(config);
  const Quantity temperature = config.environment.temperature;
  const bool in_helium = config.environment.medium == MediumKind::kHelium;
  const auto regime = casimir::regime_report(
      geometry, temperature, in_helium ? casimir::Medium::kHelium : casimir::Medium::kVacuum,
      config.coefficient);
  add(r, "radius", geometry.radius, "m");
  add(r, "separation", geometry.separation, "m");
  add(r, "temperature", temperature, "K");
  add(r, "thermal_coefficient", casimir::coefficient_value(config.coefficient), "1");
  add(r, "force_thermal", regime.force_thermal, "N");
  add(r, "force_zero_t", regime.force_zero_t, "N");
  add(r, "thermal_crossover_length", regime.crossover_length, "m");
  add(r, "thermal_dominant", regime.dominant == casimir::Dominant::kThermal ? 1.0 : 0.0, "bool");
  add(r, "plate_pressure_thermal",
      casimir::thermal_plane_plane_pressure(temperature, geometry.separation), "Pa");
  if (regime.force_phonon_thermal) {
    add(r, "force_phonon_thermal", *regime.force_phonon_thermal, "N");
    add(r, "plate_pressure_phonon_thermal",
        casimir::phonon_thermal_plane_plane_pressure(temperature, geometry.separation), "Pa");
  }
  add(r, "phonon_zero_t_suppression.recomputed", casimir::phonon_zero_temp_suppression(), "1");
  add(r, "phonon_zero_t_suppression.paper_stated", 1e-6, "1");

  const OperatingPoint op = operating_point(config);
  add(r, "s_f", op.s_f, "N/Hz^1/2");
  add(r, "snr_at_separation",
      regime.force_thermal.value() / op.s_f.value(), "1");
  add(r, "snr_unity_d.recomputed",
      noise::snr_unity_distance(geometry.radius, temperature, op.s_f, config.coefficient), "m");
  add(r, "snr_unity_d.paper_stated", 26e-6, "m");
  r.warnings = regime.warnings;
  return r;
}

Report helium_report(const ExperimentConfig& config) {
  Report r;
  r.title = "superfluid helium damping";
  const auto& spec = config.membrane;
  Quantity temperature = config.environment.temperature;
  double x3 = config.environment.he3_fraction;
  if (config.environment.medium != MediumKind::kHelium) {
    temperature = 0.03 * units::K;
    x3 = 0.0;
    r.warnings.push_back("environment is vacuum; helium figures evaluated at 0.03 K");
  }
  Diagnostics diag;
  helium::validate({temperature, x3, config.environment.medium_valid_below}, &diag);
  const Quantity omega0 = membrane::angular_frequency(spec);
  const Quantity gamma_phonon = helium::phonon_damping_rate(temperature, spec.density, spec.thickness);
  add(r, "temperature", temperature, "K");
  add(r, "omega0", omega0, "rad/s");
  add(r, "gamma_phonon", gamma_phonon, "1/s");
  add(r, "q_phonon", helium::phonon_limited_q(omega0, temperature, spec.density, spec.thickness), "1");
  add(r, "temperature_for_phonon_q_1e7.recomputed",
      helium::temperature_for_phonon_q(omega0, 1e7, spec.density, spec.thickness), "K");
  add(r, "temperature_for_phonon_q_1e7.paper_stated", 0.03, "K");

  add(r, "he3_fraction", x3, "1");
  add(r, "gamma_he3", helium::he3_damping_rate(temperature, x3, spec.density, spec.thickness), "1/s");
  const Quantity gamma_he3_ref = helium::he3_damping_rate(temperature, 1e-10, spec.density, spec.thickness);
  add(r, "gamma_he3_at_x3_1e-10", gamma_he3_ref, "1/s");
  add(r, "he3_to_phonon_ratio_at_x3_1e-10", gamma_he3_ref.value() / gamma_phonon.value(), "1");
  add(r, "q_intrinsic", membrane::intrinsic_q(spec, temperature), "1");

  add(r, "he3_thermal_wavelength.recomputed", helium::thermal_wavelength_he3(temperature), "m");
  add(r, "he3_thermal_wavelength.paper_stated", 14e-9, "m");
  add(r, "temperature_for_14nm_wavelength",
      helium::temperature_for_he3_wavelength(14.0 * units::nm), "K");

  const Quantity velocity = spec.max_linear_amplitude * omega0;
  add(r, "max_membrane_velocity", velocity, "m/s");
  add(r, "velocity_limit", helium::kMaxMembraneVelocity, "m/s");
  add(r, "velocity_model_valid",
      helium::landau_velocity_guard(spec.max_linear_amplitude, omega0) == helium::VelocityCheck::kValid
          ? 1.0
          : 0.0,
      "bool");
  for (const auto& w : diag.warnings()) r.warnings.push_back(w);
  return r;
}

Report readout_report(const ExperimentConfig& config) {
  Report r;
  r.title = "capacitive readout";
  const auto ro = config.readout ? *config.readout : readout::CapacitiveReadout{};
  readout::validate(ro);
  Diagnostics diag;
  const Quantity k = membrane::spring_constant(config.membrane);
  const Quantity x_rms = membrane::thermal_rms_amplitude(k, config.environment.temperature);
  const Quantity x_ref = 0.01 * units::nm;
  const double frac_rms = readout::capacitive_fractional_change(x_rms, ro.gap, &diag);
  const double frac_ref = readout::capacitive_fractional_change(x_ref, ro.gap, &diag);
  add(r, "gap", ro.gap, "m");
  add(r, "bias", ro.bias_voltage, "V");
  add(r, "temperature", config.environment.temperature, "K");
  add(r, "x_rms_thermal", x_rms, "m");
  add(r, "x_rms_thermal_300K.recomputed", membrane::thermal_rms_amplitude(k, 300.0 * units::K), "m");
  add(r, "x_rms_thermal_300K.paper_stated", 1e-11, "m");
  add(r, "dC_over_C_at_x_rms", frac_rms, "1");
  add(r, "signal_voltage_at_x_rms", readout::capacitive_signal_voltage(ro.bias_voltage, frac_rms), "V");
  add(r, "dC_over_C_at_0.01nm.recomputed", frac_ref, "1");
  add(r, "dC_over_C_at_0.01nm.paper_stated", 1e-5, "1");
  add(r, "signal_voltage_at_0.01nm.recomputed",
      readout::capacitive_signal_voltage(ro.bias_voltage, frac_ref), "V");
  add(r, "signal_voltage_at_0.01nm.paper_stated", 1e-6, "V");
  add(r, "cryogenic_factor_300K_to_0.3K.recomputed",
      readout::cryogenic_requirement_factor(300.0 * units::K, 0.3 * units::K), "1");
  add(r, "cryogenic_factor_300K_to_0.3K.paper_stated", 100.0, "1");
  r.warnings = diag.warnings();
  return r;
}

Report fit_report(const ringdown::FitResult& fit, std::string title) {
  Report r;
  r.title = std::move(title);
  add(r, "omega_fit", fit.omega_fit, "rad/s");
  add(r, "f_fit", fit.omega_fit / kTwoPi, "Hz");
  add(r, "gamma_fit", fit.gamma_fit, "1/s");
  add(r, "q_fit", fit.q_fit, "1");
  add(r, "q_uncertainty", fit.q_uncertainty, "1");
  add(r, "amplitude_fit", fit.amplitude_fit, "m");
  add(r, "phase_fit", fit.phase_fit, "rad");
  add(r, "residual_rms", fit.residual_rms, "m");
  add(r, "converged", fit.converged ? 1.0 : 0.0, "bool");
  return r;
}

}  // namespace mkit::experiment
