#pragma once

// Membrane damping in superfluid 4He: phonon reflection and 3He quasiparticle
// collisions, plus the 3He concentration inversion and validity guards.

#include <optional>

#include "membranekit/constants.hpp"
#include "membranekit/errors.hpp"
#include "membranekit/units.hpp"

namespace mkit::helium {

/// Above this temperature phonons are not the only thermal excitations.
inline constexpr double kPhononOnlyLimit = 0.6;  // K
/// Below this temperature the phonon damping estimate is quoted as accurate.
inline constexpr double kPhononEstimateLimit = 0.1;  // K
/// Membrane velocity bound for the low-velocity damping models.
inline constexpr double kMaxMembraneVelocity = 1e-4;  // m/s

struct HeliumEnvironment {
  Quantity temperature = 0.03 * units::K;
  double he3_fraction = 0.0;  // N3 / N4
  Quantity medium_valid_below = kPhononOnlyLimit * units::K;

  bool operator==(const HeliumEnvironment&) const = default;
};

/// Throws MediumInvalidError at or above medium_valid_below; warns at or above
/// 0.1 K where the phonon damping estimate is approximate.
void validate(const HeliumEnvironment& env, Diagnostics* diag = nullptr);

struct He3Mass {
  Quantity bare = constants::kHelium3Mass * units::kg;
  Quantity effective = constants::kHelium3MassEnhancement * constants::kHelium3Mass * units::kg;
};

/// Phonon damping rate 2 pi^2 (k_b T)^4 / (rho t h^3 c_ph^4).
Quantity phonon_damping_rate(const Quantity& temperature, const Quantity& rho_sn,
                             const Quantity& thickness, Diagnostics* diag = nullptr);

/// omega0 / phonon_damping_rate; +inf at T = 0.
double phonon_limited_q(const Quantity& omega0, const Quantity& temperature,
                        const Quantity& rho_sn, const Quantity& thickness,
                        Diagnostics* diag = nullptr);

/// Temperature at which the phonon-limited Q equals `q` (exact quartic-root
/// inversion).
Quantity temperature_for_phonon_q(const Quantity& omega0, double q, const Quantity& rho_sn,
                                  const Quantity& thickness);

/// 3He collisional damping (pi 3^(3/2) / 4) sqrt(m3* k_b T) N3 / (rho t),
/// N3 = x3 n4, with the effective mass m3* inside the square root.
Quantity he3_damping_rate(const Quantity& temperature, double x3, const Quantity& rho_sn,
                          const Quantity& thickness, Diagnostics* diag = nullptr);

struct Background {
  Quantity gamma_intrinsic = 0.0 * units::per_s;
  bool include_phonon = true;
};

/// Either an inferred fraction, or an upper bound when the residual rate after
/// background subtraction is not positive.
struct ConcentrationEstimate {
  bool below_detection_floor = false;
  double x3 = 0.0;  // value, or 0 when below the floor
  /// Bound reported below the floor: the x3 whose rate equals `floor_rate`.
  std::optional<double> x3_upper_bound;
};

/// Inverts he3_damping_rate after subtracting the modelled background. When
/// below the floor, `floor_rate` (default: the measurement itself) sets the
/// reported upper bound.
ConcentrationEstimate infer_he3_concentration(const Quantity& gamma_measured,
                                              const Quantity& temperature,
                                              const Background& background,
                                              const Quantity& rho_sn, const Quantity& thickness,
                                              std::optional<Quantity> floor_rate = std::nullopt);

/// Thermal de Broglie wavelength h / sqrt(2 pi m3* k_b T) of a dissolved 3He.
Quantity thermal_wavelength_he3(const Quantity& temperature);

/// Temperature at which thermal_wavelength_he3 equals `wavelength`.
Quantity temperature_for_he3_wavelength(const Quantity& wavelength);

enum class VelocityCheck { kValid, kInvalid };

/// Valid iff a omega0 < 1e-4 m/s (and hence far below the Landau velocity).
VelocityCheck landau_velocity_guard(const Quantity& amplitude, const Quantity& omega0);

}  // namespace mkit::helium
