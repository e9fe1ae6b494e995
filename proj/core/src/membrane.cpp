#include "membranekit/membrane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "membranekit/constants.hpp"
#include "detail/checks.hpp"

namespace mkit::membrane {

namespace {

using detail::positive;
using detail::nonnegative;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_mode(ModeIndex mode) {
  if (mode.m < 1 || mode.n < 1) throw DomainError("mode indices must be >= 1");
}

double geometric_frequency(const MembraneSpec& spec, ModeIndex mode) {
  const double lx = spec.side_x.value();
  const double ly = spec.side_y.value();
  const double wave_speed = std::sqrt(spec.stress.value() / spec.density.value());
  return 0.5 * wave_speed * std::hypot(mode.m / lx, mode.n / ly);
}

}  // namespace

void validate(const MembraneSpec& spec, Diagnostics* diag) {
  positive(spec.side_x, dims::kLength, "membrane side_x");
  positive(spec.side_y, dims::kLength, "membrane side_y");
  const double t = positive(spec.thickness, dims::kLength, "membrane thickness");
  positive(spec.density, dims::kDensity, "membrane density");
  positive(spec.stress, dims::kPressure, "membrane stress");
  positive(spec.max_linear_amplitude, dims::kLength, "max_linear_amplitude");
  if (spec.override_k) positive(*spec.override_k, dims::kStiffness, "override_k");
  if (spec.override_f0) positive(*spec.override_f0, dims::kFrequency, "override_f0");
  if (spec.q_intrinsic.empty()) throw DomainError("intrinsic Q table is empty");
  for (const auto& point : spec.q_intrinsic) {
    positive(point.temperature, dims::kTemperature, "intrinsic Q temperature");
    if (!(point.q >= 1.0) || !std::isfinite(point.q)) {
      throw DomainError("intrinsic Q values must be >= 1");
    }
  }
  if (t < kCatalogThicknessMin || t > kCatalogThicknessMax) {
    warn(diag, "membrane thickness " + spec.thickness.to_string() +
                   " is outside the 20-200 nm catalogue range");
  }
}

double intrinsic_q(const MembraneSpec& spec, const Quantity& temperature) {
  const double temp = positive(temperature, dims::kTemperature, "temperature");
  if (spec.q_intrinsic.empty()) throw DomainError("intrinsic Q table is empty");
  std::vector<IntrinsicQPoint> table = spec.q_intrinsic;
  std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) {
    return a.temperature.value() < b.temperature.value();
  });
  if (temp <= table.front().temperature.value()) return table.front().q;
  if (temp >= table.back().temperature.value()) return table.back().q;
  auto hi = std::upper_bound(table.begin(), table.end(), temp,
                             [](double t, const auto& p) { return t < p.temperature.value(); });
  auto lo = std::prev(hi);
  const double x0 = std::log(lo->temperature.value());
  const double x1 = std::log(hi->temperature.value());
  const double w = (std::log(temp) - x0) / (x1 - x0);
  return std::exp((1.0 - w) * std::log(lo->q) + w * std::log(hi->q));
}

Quantity mode_frequency(const MembraneSpec& spec, ModeIndex mode) {
  validate(spec);
  check_mode(mode);
  const double f = geometric_frequency(spec, mode);
  if (spec.override_f0) {
    const double ratio = f / geometric_frequency(spec, kFundamental);
    return spec.override_f0->value() * ratio * units::Hz;
  }
  return f * units::Hz;
}

Quantity angular_frequency(const MembraneSpec& spec, ModeIndex mode) {
  return kTwoPi * mode_frequency(spec, mode);
}

Quantity effective_mass(const MembraneSpec& spec, ModeIndex mode) {
  validate(spec);
  check_mode(mode);
  if (spec.override_k && spec.override_f0) {
    const double w0 = kTwoPi * spec.override_f0->value();
    return spec.override_k->value() / (w0 * w0) * units::kg;
  }
  // sin^2 mode shapes average to 1/4 over the membrane for every (m, n).
  return spec.density * spec.thickness * spec.side_x * spec.side_y / 4.0;
}

Quantity spring_constant(const MembraneSpec& spec, ModeIndex mode) {
  validate(spec);
  check_mode(mode);
  if (spec.override_k) {
    const double ratio = geometric_frequency(spec, mode) / geometric_frequency(spec, kFundamental);
    return *spec.override_k * (ratio * ratio);
  }
  const Quantity w = angular_frequency(spec, mode);
  return effective_mass(spec, mode) * w * w;
}

DampingBudget& DampingBudget::add_rate(std::string name, const Quantity& gamma) {
  const double g = gamma.require(dims::kFrequency, "damping rate");
  if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("damping rate must be >= 0");
  channels_.push_back({std::move(name), ChannelKind::kRate, gamma});
  return *this;
}

DampingBudget& DampingBudget::add_q(std::string name, double q) {
  if (!(q > 0.0)) throw DomainError("channel Q must be > 0");
  channels_.push_back({std::move(name), ChannelKind::kQuality, Quantity{q}});
  return *this;
}

Quantity DampingBudget::rate_of(const DampingChannel& channel, const Quantity& f0) const {
  if (channel.kind == ChannelKind::kRate) return channel.value;
  const double w0 = kTwoPi * f0.require(dims::kFrequency, "f0");
  if (std::isinf(channel.value.value())) return 0.0 * units::per_s;
  return w0 / channel.value.value() * units::per_s;
}

CombinedQ combine_q(const DampingBudget& budget, const Quantity& f0) {
  const double fr = positive(f0, dims::kFrequency, "f0");
  if (budget.empty()) throw DomainError("damping budget has no channels");
  double gamma = 0.0;
  for (const auto& channel : budget.channels()) gamma += budget.rate_of(channel, f0).value();
  const double w0 = kTwoPi * fr;
  const double q = gamma > 0.0 ? w0 / gamma : std::numeric_limits<double>::infinity();
  return {q, gamma * units::per_s};
}

double support_limited_q(double mass_ratio, double mount_q) {
  if (!(mass_ratio >= 1.0) || !(mount_q >= 1.0)) {
    throw DomainError("support model needs mass_ratio >= 1 and mount_q >= 1");
  }
  return mass_ratio * mount_q;
}

Quantity thermal_rms_amplitude(const Quantity& k, const Quantity& temperature) {
  const double kk = positive(k, dims::kStiffness, "spring constant");
  const double t = temperature.require(dims::kTemperature, "temperature");
  if (!(t >= 0.0)) throw DomainError("temperature must be >= 0");
  return std::sqrt(constants::kBoltzmann * t / kk) * units::m;
}

AmplitudeCheck validate_amplitude(const Quantity& amplitude, const MembraneSpec& spec) {
  const double a = amplitude.require(dims::kLength, "amplitude");
  if (!(a >= 0.0)) throw DomainError("amplitude must be >= 0");
  return a > spec.max_linear_amplitude.value() ? AmplitudeCheck::kNonlinearWarning
                                               : AmplitudeCheck::kLinear;
}

}  // namespace mkit::membrane
