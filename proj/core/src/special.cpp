#include "splab/special.hpp"

#include <limits>
#include <stdexcept>

namespace splab {

namespace {

// Lower-gamma series: gamma(a,z) = z^a e^-z sum_n z^n / [a(a+1)...(a+n)].
double lower_series(double a, double z) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 1000; ++n) {
    term *= z / (a + double(n));
    sum += term;
    if (std::abs(term) < std::abs(sum) * std::numeric_limits<double>::epsilon()) break;
  }
  return std::exp(-z + a * std::log(z)) * sum;
}

// Continued fraction Gamma(a,z) = e^-z z^a / (z+1-a - 1(1-a)/(z+3-a - ...)),
// evaluated with the modified Lentz scheme.
double upper_continued_fraction(double a, double z) {
  const double tiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double f = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::abs(delta - 1.0) < std::numeric_limits<double>::epsilon()) break;
  }
  return std::exp(-z + a * std::log(z)) * f;
}

}  // namespace

double upper_incomplete_gamma(double a, double z) {
  if (!(a > 0.0)) throw std::domain_error("upper_incomplete_gamma: need a > 0");
  if (!(z >= 0.0)) throw std::domain_error("upper_incomplete_gamma: need z >= 0");
  if (z == 0.0) return std::tgamma(a);
  if (z < a + 1.0) return std::tgamma(a) - lower_series(a, z);
  return upper_continued_fraction(a, z);
}

}  // namespace splab
