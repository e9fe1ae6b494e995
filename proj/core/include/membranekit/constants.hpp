#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "membranekit/units.hpp"

namespace mkit::constants {

// SI 2019 exact defining constants.
inline constexpr double kBoltzmann = 1.380649e-23;       // J/K, exact
inline constexpr double kPlanck = 6.62607015e-34;        // J s, exact
inline constexpr double kHbar = kPlanck / (2.0 * std::numbers::pi);
inline constexpr double kSpeedOfLight = 299792458.0;     // m/s, exact

// CODATA 2018.
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
// AME 2016 atomic masses.
inline constexpr double kHelium3MassU = 3.0160293201;
inline constexpr double kHelium4MassU = 4.002603254;
inline constexpr double kHelium3Mass = kHelium3MassU * kAtomicMassUnit;
inline constexpr double kHelium4Mass = kHelium4MassU * kAtomicMassUnit;

// Liquid 4He at T -> 0, saturated vapour pressure: 0.145 g/cm^3.
inline constexpr double kHelium4LiquidDensity = 145.0;  // kg/m^3
inline constexpr double kHelium4NumberDensity = kHelium4LiquidDensity / kHelium4Mass;

// First sound in superfluid 4He.
inline constexpr double kFirstSound = 237.0;  // m/s
// Landau critical velocity scale for phonon creation.
inline constexpr double kLandauVelocity = 60.0;  // m/s

// Typical LPCVD silicon nitride.
inline constexpr double kSiliconNitrideDensity = 3100.0;  // kg/m^3

// Dissolved 3He quasiparticle mass enhancement.
inline constexpr double kHelium3MassEnhancement = 2.2;

inline constexpr double kZeta3 = 1.2020569031595942;  // Apery's constant

/// Descriptor of the whole constant set, echoed in emitted provenance.
inline constexpr std::string_view kConstantSetName =
    "SI-2019 exact (k_b,h,c); CODATA-2018 u; AME-2016 m3,m4; rho_He4(T->0)=145 kg/m3; "
    "c_ph=237 m/s; rho_SN=3100 kg/m3";

/// Named constant lookup. Known identifiers: k_b, h, hbar, c, m3_bare, m3_star,
/// m4, n4, rho_sn_default, c_ph, v_landau. Throws LookupError otherwise.
Quantity constant(std::string_view name);

struct ConstantInfo {
  std::string_view name;
  Quantity value;
  std::string_view source;
};

/// Every known constant with the source it was taken from.
const std::vector<ConstantInfo>& constant_table();

}  // namespace mkit::constants
