#include "membranekit/casimir.hpp"

#include <cmath>
#include <numbers>

#include "membranekit/constants.hpp"
#include "detail/checks.hpp"

namespace mkit::casimir {

namespace {

using detail::positive;
using detail::nonnegative;

using constants::kBoltzmann;

}  // namespace

double coefficient_value(ThermalCoefficient c) {
  switch (c) {
    case ThermalCoefficient::kStated:
      return 1.2;
    case ThermalCoefficient::kIdealMetalPfa:
      return constants::kZeta3 / 8.0;
  }
  return 1.2;
}

void validate(const SpherePlaneGeometry& geometry, Diagnostics* diag) {
  const double r = positive(geometry.radius, dims::kLength, "sphere radius");
  const double d = positive(geometry.separation, dims::kLength, "separation");
  if (d > r / 100.0) {
    warn(diag, "separation exceeds R/100; proximity-force approximation is unreliable");
  }
  if (geometry.conducting_spot_diameter) {
    const double spot =
        positive(*geometry.conducting_spot_diameter, dims::kLength, "conducting spot diameter");
    if (spot <= kMinSpotDiameter) {
      warn(diag, "conducting spot diameter must exceed 2 mm for the sphere-plane approximation");
    }
  }
  if (geometry.film_thickness) {
    const double film = positive(*geometry.film_thickness, dims::kLength, "film thickness");
    if (film < kMinFilmThickness) {
      warn(diag, "conducting film thinner than 50 nm; ideal-metal force is not reached");
    }
  }
}

Quantity thermal_sphere_plane(const Quantity& radius, const Quantity& temperature,
                              const Quantity& separation, ThermalCoefficient coefficient) {
  const double r = positive(radius, dims::kLength, "sphere radius");
  const double t = nonnegative(temperature, dims::kTemperature, "temperature");
  const double d = positive(separation, dims::kLength, "separation");
  return coefficient_value(coefficient) * r * kBoltzmann * t / (d * d) * units::N;
}

Quantity zero_temp_sphere_plane(const Quantity& radius, const Quantity& separation) {
  const double r = positive(radius, dims::kLength, "sphere radius");
  const double d = positive(separation, dims::kLength, "separation");
  constexpr double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return pi3 * constants::kHbar * constants::kSpeedOfLight * r / (360.0 * d * d * d) * units::N;
}

Quantity thermal_plane_plane_pressure(const Quantity& temperature, const Quantity& separation) {
  const double t = nonnegative(temperature, dims::kTemperature, "temperature");
  const double d = positive(separation, dims::kLength, "separation");
  return constants::kZeta3 * kBoltzmann * t / (8.0 * std::numbers::pi * d * d * d) * units::Pa;
}

Quantity phonon_thermal_sphere_plane(const Quantity& radius, const Quantity& temperature,
                                     const Quantity& separation, ThermalCoefficient coefficient) {
  return 0.5 * thermal_sphere_plane(radius, temperature, separation, coefficient);
}

Quantity phonon_thermal_plane_plane_pressure(const Quantity& temperature,
                                             const Quantity& separation) {
  return 0.5 * thermal_plane_plane_pressure(temperature, separation);
}

double phonon_zero_temp_suppression() {
  return constants::kFirstSound / constants::kSpeedOfLight;
}

Quantity thermal_crossover_length(const Quantity& temperature) {
  const double t = positive(temperature, dims::kTemperature, "temperature");
  return constants::kHbar * constants::kSpeedOfLight / (kBoltzmann * t) * units::m;
}

ForceRegimeReport regime_report(const SpherePlaneGeometry& geometry, const Quantity& temperature,
                                Medium medium, ThermalCoefficient coefficient) {
  Diagnostics diag;
  validate(geometry, &diag);
  ForceRegimeReport report;
  report.force_thermal =
      thermal_sphere_plane(geometry.radius, temperature, geometry.separation, coefficient);
  report.force_zero_t = zero_temp_sphere_plane(geometry.radius, geometry.separation);
  report.crossover_length = thermal_crossover_length(temperature);
  report.dominant = report.force_thermal.value() >= report.force_zero_t.value()
                        ? Dominant::kThermal
                        : Dominant::kZeroTemperature;
  if (medium == Medium::kHelium) {
    report.force_phonon_thermal =
        phonon_thermal_sphere_plane(geometry.radius, temperature, geometry.separation, coefficient);
  }
  report.warnings = diag.warnings();
  return report;
}

}  // namespace mkit::casimir
