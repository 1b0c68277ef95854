#pragma once

#include <cmath>

namespace splab {

// Overflow-safe sech.
inline double sech(double x) {
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

// Upper incomplete gamma Gamma(a, z) = int_z^inf exp(-s) s^(a-1) ds,
// a > 0, z >= 0. Series expansion for z < a+1, continued fraction otherwise.
double upper_incomplete_gamma(double a, double z);

}  // namespace splab
