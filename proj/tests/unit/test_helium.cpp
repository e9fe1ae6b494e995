#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "membranekit/helium.hpp"
#include "oracle.hpp"

using namespace mkit;
using namespace mkit::helium;

namespace {

double rel(double a, double b) { return std::fabs(a / b - 1.0); }

const Quantity kRho = 3100.0 * units::kg_per_m3;
const Quantity kThick = 50.0 * units::nm;
const Quantity kW0 = 2.0 * oracle::kPi * 1e5 * units::rad_per_s;

}  // namespace

TEST(PhononDamping, ThirtyMillikelvin) {
  const double g = phonon_damping_rate(0.03 * units::K, kRho, kThick).value();
  EXPECT_LT(rel(g, oracle::phonon_rate(0.03, 3100.0, 50e-9)), 1e-12);
  EXPECT_NEAR(g, 4.0837e-3, 0.0001e-3);
}

TEST(PhononDamping, QAtThirtyMillikelvinIsNearTenMillion) {
  const double q = phonon_limited_q(kW0, 0.03 * units::K, kRho, kThick);
  EXPECT_LT(rel(q, kW0.value() / oracle::phonon_rate(0.03, 3100.0, 50e-9)), 1e-12);
  EXPECT_GT(q, 1e8);
  EXPECT_LT(q, 2e8);
}

TEST(PhononDamping, ZeroTemperatureGivesInfiniteQ) {
  EXPECT_EQ(phonon_damping_rate(0.0 * units::K, kRho, kThick).value(), 0.0);
  EXPECT_TRUE(std::isinf(phonon_limited_q(kW0, 0.0 * units::K, kRho, kThick)));
}

TEST(PhononDamping, MediumInvalidAtOrAboveLimit) {
  EXPECT_THROW(phonon_damping_rate(0.6 * units::K, kRho, kThick), MediumInvalidError);
  EXPECT_THROW(phonon_damping_rate(1.0 * units::K, kRho, kThick), DomainError);
  Diagnostics diag;
  phonon_damping_rate(0.2 * units::K, kRho, kThick, &diag);
  EXPECT_EQ(diag.warnings().size(), 1u);
  diag.clear();
  phonon_damping_rate(0.05 * units::K, kRho, kThick, &diag);
  EXPECT_TRUE(diag.empty());
}

TEST(PhononDamping, InversionForTargetQ) {
  const double t = temperature_for_phonon_q(kW0, 1e7, kRho, kThick).value();
  EXPECT_LT(rel(t, oracle::phonon_q_temperature(kW0.value(), 1e7, 3100.0, 50e-9)), 1e-12);
  EXPECT_LT(rel(phonon_limited_q(kW0, t * units::K, kRho, kThick), 1e7), 1e-12);
  EXPECT_THROW(temperature_for_phonon_q(kW0, 0.0, kRho, kThick), DomainError);
}

TEST(He3Damping, ReferenceConcentration) {
  const double g = he3_damping_rate(0.03 * units::K, 1e-10, kRho, kThick).value();
  EXPECT_LT(rel(g, oracle::he3_rate(0.03, 1e-10, 3100.0, 50e-9)), 1e-12);
  EXPECT_NEAR(g, 3.8804e-3, 0.0001e-3);
  const double ratio = g / phonon_damping_rate(0.03 * units::K, kRho, kThick).value();
  EXPECT_NEAR(ratio, 0.950, 0.001);
}

TEST(He3Damping, LinearInFractionAndRootT) {
  const double a = he3_damping_rate(0.01 * units::K, 1e-9, kRho, kThick).value();
  EXPECT_LT(rel(he3_damping_rate(0.01 * units::K, 3e-9, kRho, kThick).value(), 3.0 * a), 1e-12);
  EXPECT_LT(rel(he3_damping_rate(0.04 * units::K, 1e-9, kRho, kThick).value(), 2.0 * a), 1e-12);
  EXPECT_EQ(he3_damping_rate(0.01 * units::K, 0.0, kRho, kThick).value(), 0.0);
}

TEST(He3Damping, InvalidInputs) {
  EXPECT_THROW(he3_damping_rate(0.03 * units::K, -1e-9, kRho, kThick), DomainError);
  EXPECT_THROW(he3_damping_rate(0.03 * units::K, 1.5, kRho, kThick), DomainError);
  EXPECT_THROW(he3_damping_rate(0.0 * units::K, 1e-9, kRho, kThick), DomainError);
  EXPECT_THROW(he3_damping_rate(0.7 * units::K, 1e-9, kRho, kThick), MediumInvalidError);
}

TEST(InferConcentration, RecoversInjectedFraction) {
  const Quantity t = 0.03 * units::K;
  const double intrinsic = 1e-3;
  const double measured = intrinsic + oracle::phonon_rate(0.03, 3100.0, 50e-9) +
                          oracle::he3_rate(0.03, 2e-10, 3100.0, 50e-9);
  const auto est = infer_he3_concentration(measured * units::per_s, t,
                                           Background{intrinsic * units::per_s, true}, kRho, kThick);
  EXPECT_FALSE(est.below_detection_floor);
  EXPECT_LT(rel(est.x3, 2e-10), 1e-9);
}

TEST(InferConcentration, BelowFloorReportsUpperBound) {
  const Quantity t = 0.03 * units::K;
  const double phonon = oracle::phonon_rate(0.03, 3100.0, 50e-9);
  const auto est = infer_he3_concentration(0.5 * phonon * units::per_s, t, Background{}, kRho, kThick);
  EXPECT_TRUE(est.below_detection_floor);
  EXPECT_EQ(est.x3, 0.0);
  ASSERT_TRUE(est.x3_upper_bound.has_value());
  EXPECT_LT(rel(*est.x3_upper_bound, 0.5 * phonon / oracle::he3_rate(0.03, 1.0, 3100.0, 50e-9)), 1e-12);

  const auto floored = infer_he3_concentration(0.5 * phonon * units::per_s, t, Background{}, kRho,
                                               kThick, 1e-4 * units::per_s);
  EXPECT_LT(rel(*floored.x3_upper_bound, 1e-4 / oracle::he3_rate(0.03, 1.0, 3100.0, 50e-9)), 1e-12);
}

TEST(He3Wavelength, ThirtyMillikelvin) {
  const double l = thermal_wavelength_he3(0.03 * units::K).value();
  EXPECT_LT(rel(l, oracle::he3_wavelength(0.03)), 1e-12);
  EXPECT_NEAR(l, 3.913e-9, 0.001e-9);
}

TEST(He3Wavelength, FourteenNanometreTemperature) {
  const double t = temperature_for_he3_wavelength(14.0 * units::nm).value();
  EXPECT_NEAR(t, 2.3436e-3, 0.0001e-3);
  EXPECT_LT(rel(thermal_wavelength_he3(t * units::K).value(), 14e-9), 1e-12);
}

TEST(VelocityGuard, Threshold) {
  EXPECT_EQ(landau_velocity_guard(0.1 * units::nm, kW0), VelocityCheck::kValid);
  // 0.18 nm at the default membrane frequency exceeds 1e-4 m/s.
  EXPECT_EQ(landau_velocity_guard(0.18 * units::nm, 2.0 * oracle::kPi * 100322.06 * units::rad_per_s),
            VelocityCheck::kInvalid);
  EXPECT_EQ(landau_velocity_guard(1e-4 * units::m, 1.0 * units::rad_per_s), VelocityCheck::kInvalid);
}

TEST(Environment, Validate) {
  Diagnostics diag;
  validate(HeliumEnvironment{}, &diag);
  EXPECT_TRUE(diag.empty());
  HeliumEnvironment hot;
  hot.temperature = 0.6 * units::K;
  EXPECT_THROW(validate(hot), MediumInvalidError);
  HeliumEnvironment tight;
  tight.medium_valid_below = 0.02 * units::K;
  EXPECT_THROW(validate(tight), MediumInvalidError);
  HeliumEnvironment bad;
  bad.he3_fraction = 2.0;
  EXPECT_THROW(validate(bad), DomainError);
}

TEST(HeliumProperty, PhononRateIsQuartic) {
  gen::Source src(501);
  for (int i = 0; i < gen::kCases; ++i) {
    const double t = src.uniform(1e-4, 0.05);
    const double a = src.uniform(1.0, 10.0);
    const double g1 = phonon_damping_rate(t * units::K, kRho, kThick).value();
    const double g2 = phonon_damping_rate(a * t * units::K, kRho, kThick).value();
    EXPECT_LT(rel(g2 / g1, std::pow(a, 4)), 1e-12);
  }
}

TEST(HeliumProperty, InferenceInvertsForwardModel) {
  gen::Source src(502);
  for (int i = 0; i < gen::kCases; ++i) {
    const double t = src.uniform(1e-3, 0.09);
    const double x3 = src.log_uniform(1e-12, 1e-6);
    const double gi = src.log_uniform(1e-6, 1e-2);
    const double measured = gi + phonon_damping_rate(t * units::K, kRho, kThick).value() +
                            he3_damping_rate(t * units::K, x3, kRho, kThick).value();
    const auto est = infer_he3_concentration(measured * units::per_s, t * units::K,
                                             Background{gi * units::per_s, true}, kRho, kThick);
    if (est.below_detection_floor) {
      ADD_FAILURE() << "x3=" << x3 << " t=" << t;
      continue;
    }
    // Cancellation error scales with the background-to-signal ratio.
    const double he3 = he3_damping_rate(t * units::K, x3, kRho, kThick).value();
    EXPECT_LT(rel(est.x3, x3), 1e-14 * (measured / he3) + 1e-12);
  }
}

TEST(HeliumProperty, WavelengthInversionRoundTrips) {
  gen::Source src(503);
  for (int i = 0; i < gen::kCases; ++i) {
    const double t = src.log_uniform(1e-5, 0.5);
    const double l = thermal_wavelength_he3(t * units::K).value();
    EXPECT_LT(rel(temperature_for_he3_wavelength(l * units::m).value(), t), 1e-12);
  }
}
