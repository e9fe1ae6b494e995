#include "membranekit/constants.hpp"

namespace mkit::constants {

const std::vector<ConstantInfo>& constant_table() {
  static const std::vector<ConstantInfo> table = {
      {"k_b", {kBoltzmann, dims::kHeatCapacity}, "SI 2019 exact"},
      {"h", {kPlanck, dims::kAction}, "SI 2019 exact"},
      {"hbar", {kHbar, dims::kAction}, "h / 2pi"},
      {"c", {kSpeedOfLight, dims::kVelocity}, "SI 2019 exact"},
      {"m3_bare", {kHelium3Mass, dims::kMass}, "AME 2016 mass 3.0160293201 u, CODATA 2018 u"},
      {"m3_star",
       {kHelium3MassEnhancement * kHelium3Mass, dims::kMass},
       "2.2 x bare 3He mass (quasiparticle in superfluid 4He)"},
      {"m4", {kHelium4Mass, dims::kMass}, "AME 2016 mass 4.002603254 u, CODATA 2018 u"},
      {"n4",
       {kHelium4NumberDensity, dims::kNumberDensity},
       "145 kg/m3 liquid 4He at T->0 divided by m4"},
      {"rho_sn_default", {kSiliconNitrideDensity, dims::kDensity}, "typical LPCVD SiN"},
      {"c_ph", {kFirstSound, dims::kVelocity}, "first sound in superfluid 4He"},
      {"v_landau", {kLandauVelocity, dims::kVelocity}, "Landau critical velocity scale"},
  };
  return table;
}

Quantity constant(std::string_view name) {
  for (const auto& entry : constant_table()) {
    if (entry.name == name) return entry.value;
  }
  throw LookupError("unknown constant '" + std::string(name) + "'");
}

}  // namespace mkit::constants
