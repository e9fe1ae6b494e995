#pragma once

#include <cmath>
#include <string>

#include "membranekit/errors.hpp"
#include "membranekit/units.hpp"

namespace mkit::detail {

inline double positive(const Quantity& q, const Dimension& dim, const char* what) {
  const double v = q.require(dim, what);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be strictly positive and finite");
  }
  return v;
}

inline double nonnegative(const Quantity& q, const Dimension& dim, const char* what) {
  const double v = q.require(dim, what);
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be non-negative and finite");
  }
  return v;
}

}  // namespace mkit::detail
