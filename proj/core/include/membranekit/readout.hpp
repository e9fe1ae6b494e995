#pragma once

// Small-signal algebra for detecting membrane motion.

#include "membranekit/errors.hpp"
#include "membranekit/units.hpp"

namespace mkit::readout {

/// Parallel-plate capacitor formed by a plate behind the metallised membrane.
struct CapacitiveReadout {
  Quantity gap = 0.1 * units::mm;
  Quantity bias_voltage = 1.0 * units::V;

  bool operator==(const CapacitiveReadout&) const = default;
};

void validate(const CapacitiveReadout& readout);

/// dC/C = dx / gap. Throws DomainError when displacement >= gap; warns past
/// gap/100 where the linearisation degrades.
double capacitive_fractional_change(const Quantity& displacement, const Quantity& gap,
                                    Diagnostics* diag = nullptr);

/// bias * dC/C for an ideal divider.
Quantity capacitive_signal_voltage(const Quantity& bias, double fractional_change);

/// Ratio of rms thermal displacements, sqrt(T_hot / T_cold).
double cryogenic_requirement_factor(const Quantity& t_hot, const Quantity& t_cold);

}  // namespace mkit::readout
