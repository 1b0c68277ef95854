#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace splab {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Closed interval; lo/hi may be +-inf for semi-infinite ranges.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw std::invalid_argument("Interval: need lo < hi");
  }
  double length() const { return hi - lo; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

// Exponential decay envelope: truncation radius X is chosen so that
// exp(-2 min(delta-, delta+) X) < cutoff_tol.
struct DecayProfile {
  double delta_minus = 0.5;
  double delta_plus = 0.5;
  double cutoff_tol = 1e-12;

  double radius() const {
    const double d = std::min(delta_minus, delta_plus);
    if (d <= 0.0 || cutoff_tol <= 0.0 || cutoff_tol >= 1.0)
      throw std::domain_error("DecayProfile: need positive rates and cutoff in (0,1)");
    return -std::log(cutoff_tol) / (2.0 * d);
  }
};

// Uniform axis descriptor for [x_min, x_max] with n nodes.
struct GridSpec {
  double x_min = -20.0;
  double x_max = 20.0;
  std::size_t n = 4001;

  double step() const { return (x_max - x_min) / double(n - 1); }
  double x(std::size_t i) const { return x_min + double(i) * step(); }
};

// Uniformly sampled function on a truncated interval.
template <typename T>
struct BasicGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n = 0;
  std::vector<T> values;

  BasicGrid() = default;
  explicit BasicGrid(const GridSpec& spec, T fill = T{})
      : x_min(spec.x_min), x_max(spec.x_max), n(spec.n), values(spec.n, fill) {
    if (n < 2 || !(x_min < x_max))
      throw std::invalid_argument("BasicGrid: need n >= 2 and x_min < x_max");
  }

  double step() const { return (x_max - x_min) / double(n - 1); }
  double x(std::size_t i) const { return x_min + double(i) * step(); }
  GridSpec spec() const { return {x_min, x_max, n}; }

  bool same_axis(const BasicGrid& other) const {
    return n == other.n && x_min == other.x_min && x_max == other.x_max;
  }

  bool all_finite() const {
    for (const T& v : values)
      if (!std::isfinite(std::abs(v))) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : values) m = std::max(m, std::abs(v));
    return m;
  }

  // Piecewise-linear evaluation, clamped to the axis range.
  T interp(double xq) const {
    if (xq <= x_min) return values.front();
    if (xq >= x_max) return values.back();
    const double s = (xq - x_min) / step();
    std::size_t i = std::min(n - 2, std::size_t(s));
    const double w = s - double(i);
    return values[i] * (1.0 - w) + values[i + 1] * w;
  }

  static BasicGrid sample(const GridSpec& spec, const std::function<T(double)>& f) {
    BasicGrid g(spec);
    for (std::size_t i = 0; i < g.n; ++i) g.values[i] = f(g.x(i));
    return g;
  }
};

using Grid = BasicGrid<double>;
using ComplexGrid = BasicGrid<std::complex<double>>;

}  // namespace splab
