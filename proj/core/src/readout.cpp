#include "membranekit/readout.hpp"

#include <cmath>

#include "detail/checks.hpp"

namespace mkit::readout {

using detail::nonnegative;
using detail::positive;

void validate(const CapacitiveReadout& readout) {
  positive(readout.gap, dims::kLength, "readout gap");
  nonnegative(readout.bias_voltage, dims::kVoltage, "bias voltage");
}

double capacitive_fractional_change(const Quantity& displacement, const Quantity& gap,
                                    Diagnostics* diag) {
  const double x = nonnegative(displacement, dims::kLength, "displacement");
  const double g = positive(gap, dims::kLength, "gap");
  if (x >= g) throw DomainError("displacement must be smaller than the capacitor gap");
  if (x > g / 100.0) warn(diag, "displacement exceeds gap/100; small-signal model degrades");
  return x / g;
}

Quantity capacitive_signal_voltage(const Quantity& bias, double fractional_change) {
  const double v = nonnegative(bias, dims::kVoltage, "bias voltage");
  return v * fractional_change * units::V;
}

double cryogenic_requirement_factor(const Quantity& t_hot, const Quantity& t_cold) {
  const double hot = positive(t_hot, dims::kTemperature, "hot temperature");
  const double cold = positive(t_cold, dims::kTemperature, "cold temperature");
  return std::sqrt(hot / cold);
}

}  // namespace mkit::readout
