#pragma once

// Stretched-membrane resonator mechanics and damping budgets.

#include <optional>
#include <string>
#include <vector>

#include "membranekit/errors.hpp"
#include "membranekit/units.hpp"

namespace mkit::membrane {

/// One tabulated intrinsic quality factor.
struct IntrinsicQPoint {
  Quantity temperature;
  double q = 1.0;

  bool operator==(const IntrinsicQPoint&) const = default;
};

struct MembraneSpec {
  Quantity side_x = 1.0 * units::mm;
  Quantity side_y = 1.0 * units::mm;
  Quantity thickness = 50.0 * units::nm;
  Quantity density = 3100.0 * units::kg_per_m3;
  // Reproduces f11 ~ 1e5 Hz for the default 1 mm, 50 nm membrane.
  Quantity stress = 62.4 * units::MPa;
  // Measured ring-down Qs: 1e6 at room temperature, 1e7 at 300 mK.
  std::vector<IntrinsicQPoint> q_intrinsic = {{0.3 * units::K, 1e7}, {300.0 * units::K, 1e6}};
  std::optional<Quantity> override_k;
  std::optional<Quantity> override_f0;
  Quantity max_linear_amplitude = 0.18 * units::nm;

  bool operator==(const MembraneSpec&) const = default;
};

struct ModeIndex {
  int m = 1;
  int n = 1;
};

inline constexpr ModeIndex kFundamental{1, 1};

/// Catalogue thickness band for commercial windows.
inline constexpr double kCatalogThicknessMin = 20e-9;
inline constexpr double kCatalogThicknessMax = 200e-9;

/// Throws DomainError/DimensionError for an invalid spec; out-of-catalogue
/// thickness is reported as a warning.
void validate(const MembraneSpec& spec, Diagnostics* diag = nullptr);

/// Intrinsic Q at temperature T: log Q interpolated linearly in log T between
/// table points, clamped outside the table.
double intrinsic_q(const MembraneSpec& spec, const Quantity& temperature);

/// f_mn = (1/2) sqrt(sigma/rho) sqrt((m/Lx)^2 + (n/Ly)^2). An override_f0 pins
/// the fundamental; higher modes keep their geometric ratio to it.
Quantity mode_frequency(const MembraneSpec& spec, ModeIndex mode = kFundamental);

/// 2 pi f of the given mode.
Quantity angular_frequency(const MembraneSpec& spec, ModeIndex mode = kFundamental);

/// rho t Lx Ly / 4, or k / omega0^2 when both k and f0 are overridden.
Quantity effective_mass(const MembraneSpec& spec, ModeIndex mode = kFundamental);

/// m_eff (2 pi f_mn)^2, or override_k for the fundamental (higher modes scale
/// as f^2 from it).
Quantity spring_constant(const MembraneSpec& spec, ModeIndex mode = kFundamental);

enum class ChannelKind { kRate, kQuality };

struct DampingChannel {
  std::string name;
  ChannelKind kind = ChannelKind::kRate;
  Quantity value;  // 1/s for kRate, dimensionless for kQuality
};

/// Named damping channels (intrinsic, support, phonon, he3, ...).
class DampingBudget {
 public:
  DampingBudget& add_rate(std::string name, const Quantity& gamma);
  DampingBudget& add_q(std::string name, double q);

  const std::vector<DampingChannel>& channels() const { return channels_; }
  bool empty() const { return channels_.empty(); }

  /// Energy damping rate of one channel at resonance frequency f0.
  Quantity rate_of(const DampingChannel& channel, const Quantity& f0) const;

 private:
  std::vector<DampingChannel> channels_;
};

struct CombinedQ {
  double q_total = 0.0;
  Quantity gamma_total;
};

/// 1/Q_total = sum 1/Q_i, equivalently Gamma_total = sum Gamma_i = omega0/Q_total.
CombinedQ combine_q(const DampingBudget& budget, const Quantity& f0);

/// Support-limited Q: the support/membrane mass ratio times the Q of the mount
/// (mount_q = 1 is a fully dissipative mount). Deliberately a one-parameter
/// caricature.
double support_limited_q(double mass_ratio, double mount_q);

/// Equipartition rms displacement sqrt(k_b T / k).
Quantity thermal_rms_amplitude(const Quantity& k, const Quantity& temperature);

enum class AmplitudeCheck { kLinear, kNonlinearWarning };

/// Warning iff the amplitude exceeds spec.max_linear_amplitude.
AmplitudeCheck validate_amplitude(const Quantity& amplitude, const MembraneSpec& spec);

}  // namespace mkit::membrane
