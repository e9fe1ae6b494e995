#pragma once

// Casimir force models: long-distance thermal limit, zero-temperature ideal
// conductor limit, and the superfluid phonon analogue.

#include <optional>
#include <string>

#include "membranekit/errors.hpp"
#include "membranekit/units.hpp"

namespace mkit::casimir {

/// Prefactor of the sphere-plane thermal force F = coefficient R k_b T / d^2.
enum class ThermalCoefficient {
  kStated,        // 1.2
  kIdealMetalPfa  // zeta(3)/8, from integrating the ideal-metal plate pressure
};

double coefficient_value(ThermalCoefficient c);

enum class Medium { kVacuum, kHelium };

struct SpherePlaneGeometry {
  Quantity radius = 1.0 * units::cm;
  Quantity separation = 26.0 * units::um;
  std::optional<Quantity> conducting_spot_diameter;
  std::optional<Quantity> film_thickness;

  bool operator==(const SpherePlaneGeometry&) const = default;
};

/// Minimum conducting-spot diameter for the proximity approximation.
inline constexpr double kMinSpotDiameter = 2e-3;
/// Below this, the film is not an optically thick conductor.
inline constexpr double kMinFilmThickness = 50e-9;

/// Checks R, d > 0 and warns on d > R/100, small spots, and thin films.
void validate(const SpherePlaneGeometry& geometry, Diagnostics* diag = nullptr);

/// F = coefficient R k_b T / d^2 (magnitude, attractive).
Quantity thermal_sphere_plane(const Quantity& radius, const Quantity& temperature,
                              const Quantity& separation,
                              ThermalCoefficient coefficient = ThermalCoefficient::kStated);

/// Ideal-conductor T = 0 proximity result pi^3 hbar c R / (360 d^3).
Quantity zero_temp_sphere_plane(const Quantity& radius, const Quantity& separation);

/// Ideal-metal high-temperature plate pressure zeta(3) k_b T / (8 pi d^3).
Quantity thermal_plane_plane_pressure(const Quantity& temperature, const Quantity& separation);

/// One longitudinal phonon mode: half of thermal_sphere_plane.
Quantity phonon_thermal_sphere_plane(const Quantity& radius, const Quantity& temperature,
                                     const Quantity& separation,
                                     ThermalCoefficient coefficient = ThermalCoefficient::kStated);

/// Half of thermal_plane_plane_pressure (same one-mode argument).
Quantity phonon_thermal_plane_plane_pressure(const Quantity& temperature,
                                             const Quantity& separation);

/// c_ph / c: scale-down of the zero-point phonon force relative to the
/// electromagnetic one.
double phonon_zero_temp_suppression();

/// hbar c / (k_b T); the thermal term dominates for d well above this.
Quantity thermal_crossover_length(const Quantity& temperature);

enum class Dominant { kThermal, kZeroTemperature };

struct ForceRegimeReport {
  Quantity force_thermal;
  Quantity force_zero_t;
  std::optional<Quantity> force_phonon_thermal;  // helium only
  Quantity crossover_length;
  Dominant dominant = Dominant::kThermal;
  std::vector<std::string> warnings;
};

ForceRegimeReport regime_report(const SpherePlaneGeometry& geometry, const Quantity& temperature,
                                Medium medium,
                                ThermalCoefficient coefficient = ThermalCoefficient::kStated);

}  // namespace mkit::casimir
