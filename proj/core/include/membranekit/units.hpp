#pragma once

// Runtime dimension-checked quantities.
//
// A Dimension holds the exponents of the seven SI base units. Exponents are
// stored in halves so that square roots of squared dimensions stay exact
// (force noise density carries Hz^(-1/2)); anything finer than a half is
// rejected.

#include <array>
#include <cstdint>
#include <string>

#include "membranekit/errors.hpp"

namespace mkit {

enum class BaseUnit : std::size_t { kMeter, kKilogram, kSecond, kAmpere, kKelvin, kMole, kCandela };

class Dimension {
 public:
  static constexpr std::size_t kBaseCount = 7;

  constexpr Dimension() = default;

  /// Integer exponents in the order m, kg, s, A, K, mol, cd.
  static constexpr Dimension of(int m, int kg, int s, int a = 0, int k = 0, int mol = 0,
                                int cd = 0) {
    Dimension d;
    d.halves_ = {static_cast<std::int16_t>(2 * m),  static_cast<std::int16_t>(2 * kg),
                 static_cast<std::int16_t>(2 * s),  static_cast<std::int16_t>(2 * a),
                 static_cast<std::int16_t>(2 * k),  static_cast<std::int16_t>(2 * mol),
                 static_cast<std::int16_t>(2 * cd)};
    return d;
  }

  /// Exponent of one base unit, in halves (2 means exponent 1).
  constexpr int halves(BaseUnit u) const { return halves_[static_cast<std::size_t>(u)]; }
  constexpr double exponent(BaseUnit u) const { return halves(u) / 2.0; }

  constexpr bool is_dimensionless() const {
    for (auto h : halves_) {
      if (h != 0) return false;
    }
    return true;
  }

  constexpr bool is_integral() const {
    for (auto h : halves_) {
      if (h % 2 != 0) return false;
    }
    return true;
  }

  constexpr Dimension operator*(const Dimension& o) const {
    Dimension r;
    for (std::size_t i = 0; i < kBaseCount; ++i)
      r.halves_[i] = static_cast<std::int16_t>(halves_[i] + o.halves_[i]);
    return r;
  }

  constexpr Dimension operator/(const Dimension& o) const {
    Dimension r;
    for (std::size_t i = 0; i < kBaseCount; ++i)
      r.halves_[i] = static_cast<std::int16_t>(halves_[i] - o.halves_[i]);
    return r;
  }

  /// Raise to the power (exponent_halves / 2). Throws DimensionError when a
  /// resulting exponent is not a multiple of one half.
  constexpr Dimension pow_halves(int exponent_halves) const {
    Dimension r;
    for (std::size_t i = 0; i < kBaseCount; ++i) {
      const int product = halves_[i] * exponent_halves;
      if (product % 2 != 0) {
        throw DimensionError("power leaves a base-unit exponent finer than 1/2");
      }
      r.halves_[i] = static_cast<std::int16_t>(product / 2);
    }
    return r;
  }

  constexpr bool operator==(const Dimension&) const = default;

  /// Human-readable form, e.g. "kg m s^-2" or "kg s^-1/2".
  std::string to_string() const;

 private:
  std::array<std::int16_t, kBaseCount> halves_{};
};

namespace dims {
inline constexpr Dimension kNone{};
inline constexpr Dimension kLength = Dimension::of(1, 0, 0);
inline constexpr Dimension kMass = Dimension::of(0, 1, 0);
inline constexpr Dimension kTime = Dimension::of(0, 0, 1);
inline constexpr Dimension kTemperature = Dimension::of(0, 0, 0, 0, 1);
inline constexpr Dimension kFrequency = Dimension::of(0, 0, -1);  // Hz, rad/s, 1/s
inline constexpr Dimension kVelocity = Dimension::of(1, 0, -1);
inline constexpr Dimension kForce = Dimension::of(1, 1, -2);
inline constexpr Dimension kEnergy = Dimension::of(2, 1, -2);
inline constexpr Dimension kPressure = Dimension::of(-1, 1, -2);
inline constexpr Dimension kStiffness = Dimension::of(0, 1, -2);  // N/m
inline constexpr Dimension kDensity = Dimension::of(-3, 1, 0);
inline constexpr Dimension kNumberDensity = Dimension::of(-3, 0, 0);
inline constexpr Dimension kAction = Dimension::of(2, 1, -1);     // J s
inline constexpr Dimension kMomentum = Dimension::of(1, 1, -1);   // N s
inline constexpr Dimension kHeatCapacity = Dimension::of(2, 1, -2, 0, -1);  // J/K
inline constexpr Dimension kVoltage = Dimension::of(2, 1, -3, -1);
inline constexpr Dimension kDisplacementPsd = Dimension::of(2, 0, 1);  // m^2/Hz
// N/sqrt(Hz) = kg m s^-3/2
inline constexpr Dimension kForceNoiseDensity = kForce / kFrequency.pow_halves(1);
}  // namespace dims

class Quantity {
 public:
  constexpr Quantity() = default;
  /// Implicit: a bare double is a dimensionless quantity.
  constexpr Quantity(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  constexpr Quantity(double value, Dimension dim) : value_(value), dim_(dim) {}

  constexpr double value() const { return value_; }
  constexpr const Dimension& dim() const { return dim_; }

  /// Value expressed in the given unit; throws DimensionError on mismatch.
  double in(const Quantity& unit) const;

  /// SI value after checking that the dimension is `expected`.
  double require(const Dimension& expected, const char* what) const;

  Quantity operator-() const { return {-value_, dim_}; }
  Quantity& operator+=(const Quantity& o);
  Quantity& operator-=(const Quantity& o);
  Quantity& operator*=(const Quantity& o);
  Quantity& operator/=(const Quantity& o);

  friend Quantity operator+(Quantity a, const Quantity& b) { return a += b; }
  friend Quantity operator-(Quantity a, const Quantity& b) { return a -= b; }
  friend Quantity operator*(Quantity a, const Quantity& b) { return a *= b; }
  friend Quantity operator/(Quantity a, const Quantity& b) { return a /= b; }

  // Comparisons throw DimensionError across dimensions.
  friend bool operator==(const Quantity& a, const Quantity& b);
  friend bool operator<(const Quantity& a, const Quantity& b);
  friend bool operator>(const Quantity& a, const Quantity& b) { return b < a; }
  friend bool operator<=(const Quantity& a, const Quantity& b) { return !(b < a); }
  friend bool operator>=(const Quantity& a, const Quantity& b) { return !(a < b); }

  std::string to_string() const;

 private:
  double value_ = 0.0;
  Dimension dim_{};
};

/// Power with an integer or half-integer exponent (exponent_halves / 2).
Quantity pow_halves(const Quantity& q, int exponent_halves);
Quantity sqrt(const Quantity& q);
Quantity abs(const Quantity& q);

enum class CombineOp { kAdd, kSub, kMul, kDiv, kPow };

/// Generic binary combination. For kPow, `b` must be dimensionless with an
/// integer or half-integer value.
Quantity checked_combine(const Quantity& a, const Quantity& b, CombineOp op);

/// Unit constants for building quantities, e.g. `50.0 * units::nm`.
namespace units {
inline constexpr Quantity one{1.0};
inline constexpr Quantity m{1.0, dims::kLength};
inline constexpr Quantity cm{1e-2, dims::kLength};
inline constexpr Quantity mm{1e-3, dims::kLength};
inline constexpr Quantity um{1e-6, dims::kLength};
inline constexpr Quantity nm{1e-9, dims::kLength};
inline constexpr Quantity kg{1.0, dims::kMass};
inline constexpr Quantity s{1.0, dims::kTime};
inline constexpr Quantity Hz{1.0, dims::kFrequency};
inline constexpr Quantity kHz{1e3, dims::kFrequency};
inline constexpr Quantity rad_per_s{1.0, dims::kFrequency};
inline constexpr Quantity per_s{1.0, dims::kFrequency};
inline constexpr Quantity K{1.0, dims::kTemperature};
inline constexpr Quantity mK{1e-3, dims::kTemperature};
inline constexpr Quantity N{1.0, dims::kForce};
inline constexpr Quantity J{1.0, dims::kEnergy};
inline constexpr Quantity Pa{1.0, dims::kPressure};
inline constexpr Quantity MPa{1e6, dims::kPressure};
inline constexpr Quantity N_per_m{1.0, dims::kStiffness};
inline constexpr Quantity kg_per_m3{1.0, dims::kDensity};
inline constexpr Quantity m_per_s{1.0, dims::kVelocity};
inline constexpr Quantity N_s{1.0, dims::kMomentum};
inline constexpr Quantity V{1.0, dims::kVoltage};
inline constexpr Quantity m2_per_Hz{1.0, dims::kDisplacementPsd};
inline constexpr Quantity N_per_rtHz{1.0, dims::kForceNoiseDensity};
}  // namespace units

}  // namespace mkit
