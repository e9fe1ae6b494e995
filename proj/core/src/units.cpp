#include "membranekit/units.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mkit {

namespace {

constexpr const char* kBaseSymbols[Dimension::kBaseCount] = {"m", "kg", "s", "A", "K", "mol", "cd"};

void require_same(const Quantity& a, const Quantity& b, const char* op) {
  if (!(a.dim() == b.dim())) {
    throw DimensionError(std::string("dimension mismatch in ") + op + ": [" + a.dim().to_string() +
                         "] vs [" + b.dim().to_string() + "]");
  }
}

}  // namespace

std::string Dimension::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < kBaseCount; ++i) {
    const int h = halves_[i];
    if (h == 0) continue;
    if (!first) out << ' ';
    first = false;
    out << kBaseSymbols[i];
    if (h == 2) continue;
    if (h % 2 == 0) {
      out << '^' << h / 2;
    } else {
      out << '^' << h << "/2";
    }
  }
  return first ? std::string("1") : out.str();
}

double Quantity::in(const Quantity& unit) const {
  require_same(*this, unit, "unit conversion");
  return value_ / unit.value_;
}

double Quantity::require(const Dimension& expected, const char* what) const {
  if (!(dim_ == expected)) {
    throw DimensionError(std::string(what) + ": expected [" + expected.to_string() + "], got [" +
                         dim_.to_string() + "]");
  }
  return value_;
}

Quantity& Quantity::operator+=(const Quantity& o) {
  require_same(*this, o, "addition");
  value_ += o.value_;
  return *this;
}

Quantity& Quantity::operator-=(const Quantity& o) {
  require_same(*this, o, "subtraction");
  value_ -= o.value_;
  return *this;
}

Quantity& Quantity::operator*=(const Quantity& o) {
  value_ *= o.value_;
  dim_ = dim_ * o.dim_;
  return *this;
}

Quantity& Quantity::operator/=(const Quantity& o) {
  value_ /= o.value_;
  dim_ = dim_ / o.dim_;
  return *this;
}

bool operator==(const Quantity& a, const Quantity& b) {
  require_same(a, b, "comparison");
  return a.value_ == b.value_;
}

bool operator<(const Quantity& a, const Quantity& b) {
  require_same(a, b, "comparison");
  return a.value_ < b.value_;
}

std::string Quantity::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value_);
  if (dim_.is_dimensionless()) return buf;
  return std::string(buf) + ' ' + dim_.to_string();
}

Quantity pow_halves(const Quantity& q, int exponent_halves) {
  const Dimension d = q.dim().pow_halves(exponent_halves);
  return {std::pow(q.value(), exponent_halves / 2.0), d};
}

Quantity sqrt(const Quantity& q) { return pow_halves(q, 1); }

Quantity abs(const Quantity& q) { return {std::fabs(q.value()), q.dim()}; }

Quantity checked_combine(const Quantity& a, const Quantity& b, CombineOp op) {
  switch (op) {
    case CombineOp::kAdd:
      return a + b;
    case CombineOp::kSub:
      return a - b;
    case CombineOp::kMul:
      return a * b;
    case CombineOp::kDiv:
      return a / b;
    case CombineOp::kPow: {
      if (!b.dim().is_dimensionless()) {
        throw DimensionError("exponent must be dimensionless, got [" + b.dim().to_string() + "]");
      }
      const double twice = 2.0 * b.value();
      if (!std::isfinite(twice) || twice != std::round(twice)) {
        throw DimensionError("exponent must be an integer or half-integer");
      }
      if (a.dim().is_dimensionless()) return {std::pow(a.value(), b.value())};
      return pow_halves(a, static_cast<int>(twice));
    }
  }
  throw DimensionError("unknown combine operator");
}

}  // namespace mkit
