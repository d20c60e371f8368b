#pragma once

#include <span>

namespace progeny {

// (1/ln 2) * integral over [lo, hi] of dz / (z * u(z)), where
// u(z) = #{p in root_progenies : p >= z}. The integrand is piecewise constant
// in u, so the value is a finite sum of (1/u) * log2(z1/z0) terms.
//
// Throws Error{InvalidArgument} unless 0 < lo <= hi, and
// Error{DegenerateInterval} if u vanishes on part of (lo, hi].
double piecewise_integral(double lo, double hi, std::span<const int> root_progenies);

}  // namespace progeny
