#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "splab/grid.hpp"

namespace splab {

// Composite Simpson node weights for m uniform nodes, unit spacing.
// Even node counts close with a Simpson 3/8 tail; m == 2 degrades to the
// trapezoid rule. Multiply by the step to integrate.
std::vector<double> simpson_node_weights(std::size_t m);

// Adaptive composite Simpson with Richardson error estimate. Semi-infinite
// endpoints are truncated at the radius of `decay`.
double integrate(const std::function<double(double)>& f, Interval iv, double tol,
                 const DecayProfile& decay = {});

template <typename T>
T grid_integral(const BasicGrid<T>& g) {
  const std::vector<double> w = simpson_node_weights(g.n);
  T acc{};
  for (std::size_t i = 0; i < g.n; ++i) acc += g.values[i] * w[i];
  return acc * g.step();
}

namespace detail {
// Per-interval weights of the local 5-node Lagrange interpolant, integrated
// with 3-point Gauss-Legendre (exact through degree 4). Row `li` integrates
// over [s_li, s_li+1] in window coordinates s = 0..4, unit spacing.
std::array<std::array<double, 5>, 4> interp5_interval_weights();
}  // namespace detail

// Running integral from x_min to each node. Each step integrates the degree-4
// interpolant through the 5 nearest nodes, so smooth integrands converge at
// O(step^5) instead of the O(step^4) of cumulative Simpson.
template <typename T>
BasicGrid<T> cumulative_integral(const BasicGrid<T>& g) {
  if (g.n < 5) throw std::invalid_argument("cumulative_integral: need n >= 5");
  static const std::array<std::array<double, 5>, 4> rows = detail::interp5_interval_weights();
  BasicGrid<T> out = g;
  const double h = g.step();
  T acc{};
  out.values[0] = acc;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    const std::size_t j0 = i < 2 ? 0 : (i + 2 >= g.n ? g.n - 5 : i - 2);
    const std::array<double, 5>& w = rows[i - j0];
    T inc{};
    for (std::size_t m = 0; m < 5; ++m) inc += g.values[j0 + m] * w[m];
    acc += inc * h;
    out.values[i + 1] = acc;
  }
  return out;
}

}  // namespace splab
