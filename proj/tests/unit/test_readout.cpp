#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "membranekit/readout.hpp"

using namespace mkit;
using namespace mkit::readout;

TEST(Capacitive, FractionalChangeAtTenPicometres) {
  EXPECT_NEAR(capacitive_fractional_change(0.01 * units::nm, 0.1 * units::mm), 1e-7, 1e-20);
}

TEST(Capacitive, SignalVoltage) {
  const Quantity v = capacitive_signal_voltage(1.0 * units::V, 1e-7);
  EXPECT_NEAR(v.value(), 1e-7, 1e-20);
  EXPECT_EQ(v.dim(), dims::kVoltage);
  EXPECT_EQ(capacitive_signal_voltage(0.0 * units::V, 1e-7).value(), 0.0);
  EXPECT_THROW(capacitive_signal_voltage(-1.0 * units::V, 1e-7), DomainError);
}

TEST(Capacitive, LargeDisplacement) {
  Diagnostics diag;
  capacitive_fractional_change(2.0 * units::um, 0.1 * units::mm, &diag);
  EXPECT_EQ(diag.warnings().size(), 1u);
  EXPECT_THROW(capacitive_fractional_change(0.1 * units::mm, 0.1 * units::mm), DomainError);
  EXPECT_THROW(capacitive_fractional_change(1.0 * units::nm, 0.0 * units::mm), DomainError);
  EXPECT_THROW(capacitive_fractional_change(1.0 * units::V, 1.0 * units::mm), DimensionError);
}

TEST(Cryogenic, RoomToThirtyMillikelvin) {
  EXPECT_NEAR(cryogenic_requirement_factor(300.0 * units::K, 0.3 * units::K), 31.6228, 1e-4);
  EXPECT_NEAR(cryogenic_requirement_factor(300.0 * units::K, 0.03 * units::K), 100.0, 1e-10);
  EXPECT_THROW(cryogenic_requirement_factor(300.0 * units::K, 0.0 * units::K), DomainError);
}

TEST(Validate, Readout) {
  EXPECT_NO_THROW(validate(CapacitiveReadout{}));
  EXPECT_THROW(validate(CapacitiveReadout{0.0 * units::m, 1.0 * units::V}), DomainError);
  EXPECT_THROW(validate(CapacitiveReadout{1.0 * units::mm, -1.0 * units::V}), DomainError);
}

TEST(ReadoutProperty, LinearInDisplacementAndBias) {
  gen::Source src(601);
  for (int i = 0; i < gen::kCases; ++i) {
    const double g = src.log_uniform(1e-6, 1e-2);
    const double x = g * src.uniform(0.0, 0.999);
    const double v = src.log_uniform(1e-3, 100.0);
    const double frac = capacitive_fractional_change(x * units::m, g * units::m);
    EXPECT_NEAR(frac, x / g, 1e-15);
    EXPECT_NEAR(capacitive_signal_voltage(v * units::V, frac).value(), v * x / g, 1e-14 * v);
  }
}
