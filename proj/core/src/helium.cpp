#include "membranekit/helium.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "detail/checks.hpp"

namespace mkit::helium {

namespace {

using constants::kBoltzmann;
using constants::kPlanck;
using detail::nonnegative;
using detail::positive;

constexpr double kPi = std::numbers::pi;

void check_temperature(double t, Diagnostics* diag) {
  if (t >= kPhononOnlyLimit) {
    throw MediumInvalidError("superfluid model invalid at T >= 0.6 K: phonons are no longer the "
                             "only thermal excitations");
  }
  if (t >= kPhononEstimateLimit) {
    warn(diag, "phonon damping estimate is approximate at T >= 0.1 K");
  }
}

// Phonon damping rate divided by T^4: 2 pi^2 k_b^4 / (rho t h^3 c_ph^4).
double phonon_coefficient(double rho, double t) {
  const double kb2 = kBoltzmann * kBoltzmann;
  const double c2 = constants::kFirstSound * constants::kFirstSound;
  return 2.0 * kPi * kPi * kb2 * kb2 / (rho * t * kPlanck * kPlanck * kPlanck * c2 * c2);
}

double he3_effective_mass() {
  return constants::kHelium3MassEnhancement * constants::kHelium3Mass;
}

}  // namespace

void validate(const HeliumEnvironment& env, Diagnostics* diag) {
  const double t = positive(env.temperature, dims::kTemperature, "helium temperature");
  const double limit = positive(env.medium_valid_below, dims::kTemperature, "medium_valid_below");
  if (!(env.he3_fraction >= 0.0 && env.he3_fraction <= 1.0)) {
    throw DomainError("3He fraction must lie in [0, 1]");
  }
  if (t >= limit) {
    throw MediumInvalidError("helium temperature " + env.temperature.to_string() +
                             " is not below the " + env.medium_valid_below.to_string() +
                             " phonon-only limit");
  }
  check_temperature(t, diag);
}

Quantity phonon_damping_rate(const Quantity& temperature, const Quantity& rho_sn,
                             const Quantity& thickness, Diagnostics* diag) {
  const double t = nonnegative(temperature, dims::kTemperature, "temperature");
  const double rho = positive(rho_sn, dims::kDensity, "membrane density");
  const double th = positive(thickness, dims::kLength, "membrane thickness");
  check_temperature(t, diag);
  const double t2 = t * t;
  return phonon_coefficient(rho, th) * t2 * t2 * units::per_s;
}

double phonon_limited_q(const Quantity& omega0, const Quantity& temperature,
                        const Quantity& rho_sn, const Quantity& thickness, Diagnostics* diag) {
  const double w0 = positive(omega0, dims::kFrequency, "omega0");
  const double gamma = phonon_damping_rate(temperature, rho_sn, thickness, diag).value();
  if (gamma == 0.0) return std::numeric_limits<double>::infinity();
  return w0 / gamma;
}

Quantity temperature_for_phonon_q(const Quantity& omega0, double q, const Quantity& rho_sn,
                                  const Quantity& thickness) {
  const double w0 = positive(omega0, dims::kFrequency, "omega0");
  const double rho = positive(rho_sn, dims::kDensity, "membrane density");
  const double th = positive(thickness, dims::kLength, "membrane thickness");
  if (!(q > 0.0)) throw DomainError("target Q must be > 0");
  return std::pow(w0 / (q * phonon_coefficient(rho, th)), 0.25) * units::K;
}

Quantity he3_damping_rate(const Quantity& temperature, double x3, const Quantity& rho_sn,
                          const Quantity& thickness, Diagnostics* diag) {
  const double t = positive(temperature, dims::kTemperature, "temperature");
  const double rho = positive(rho_sn, dims::kDensity, "membrane density");
  const double th = positive(thickness, dims::kLength, "membrane thickness");
  if (!(x3 >= 0.0 && x3 <= 1.0)) throw DomainError("3He fraction must lie in [0, 1]");
  check_temperature(t, diag);
  const double n3 = x3 * constants::kHelium4NumberDensity;
  const double prefactor = kPi * std::pow(3.0, 1.5) / 4.0;
  return prefactor * std::sqrt(he3_effective_mass() * kBoltzmann * t) * n3 / (rho * th) *
         units::per_s;
}

ConcentrationEstimate infer_he3_concentration(const Quantity& gamma_measured,
                                              const Quantity& temperature,
                                              const Background& background,
                                              const Quantity& rho_sn, const Quantity& thickness,
                                              std::optional<Quantity> floor_rate) {
  const double measured = nonnegative(gamma_measured, dims::kFrequency, "measured damping rate");
  double modelled = nonnegative(background.gamma_intrinsic, dims::kFrequency, "intrinsic rate");
  if (background.include_phonon) {
    modelled += phonon_damping_rate(temperature, rho_sn, thickness).value();
  }
  // Rate per unit x3; the model is exactly linear in N3.
  const double per_unit = he3_damping_rate(temperature, 1.0, rho_sn, thickness).value();
  const double residual = measured - modelled;
  ConcentrationEstimate estimate;
  if (!(residual > 0.0)) {
    estimate.below_detection_floor = true;
    const double floor = floor_rate ? floor_rate->require(dims::kFrequency, "floor rate")
                                    : measured;
    estimate.x3_upper_bound = floor / per_unit;
    return estimate;
  }
  estimate.x3 = residual / per_unit;
  return estimate;
}

Quantity thermal_wavelength_he3(const Quantity& temperature) {
  const double t = positive(temperature, dims::kTemperature, "temperature");
  return kPlanck / std::sqrt(2.0 * kPi * he3_effective_mass() * kBoltzmann * t) * units::m;
}

Quantity temperature_for_he3_wavelength(const Quantity& wavelength) {
  const double lambda = positive(wavelength, dims::kLength, "wavelength");
  const double p = kPlanck / lambda;
  return p * p / (2.0 * kPi * he3_effective_mass() * kBoltzmann) * units::K;
}

VelocityCheck landau_velocity_guard(const Quantity& amplitude, const Quantity& omega0) {
  const double a = nonnegative(amplitude, dims::kLength, "amplitude");
  const double w0 = positive(omega0, dims::kFrequency, "omega0");
  const double v = a * w0;
  static_assert(kMaxMembraneVelocity < 1e-3 * constants::kLandauVelocity);
  return v < kMaxMembraneVelocity ? VelocityCheck::kValid : VelocityCheck::kInvalid;
}

}  // namespace mkit::helium
