#pragma once

#include <cstddef>
#include <stdexcept>

#include "splab/grid.hpp"

namespace splab {

// Grid derivative of order 1, 2 or 4 with O(step^2) centered stencils in the
// interior and one-sided stencils at the edges (O(step^2) except the
// next-to-edge rows of order 4, which are O(step)).
template <typename T>
BasicGrid<T> differentiate(const BasicGrid<T>& g, int order) {
  const std::size_t n = g.n;
  const double h = g.step();
  BasicGrid<T> d = g;
  const auto& u = g.values;
  auto& v = d.values;

  if (order == 1) {
    if (n < 3) throw std::invalid_argument("differentiate: grid too small for order 1");
    const double s = 1.0 / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) v[i] = (u[i + 1] - u[i - 1]) * s;
    v[0] = (u[0] * -3.0 + u[1] * 4.0 - u[2]) * s;
    v[n - 1] = (u[n - 3] - u[n - 2] * 4.0 + u[n - 1] * 3.0) * s;
    return d;
  }
  if (order == 2) {
    if (n < 4) throw std::invalid_argument("differentiate: grid too small for order 2");
    const double s = 1.0 / (h * h);
    for (std::size_t i = 1; i + 1 < n; ++i) v[i] = (u[i - 1] - u[i] * 2.0 + u[i + 1]) * s;
    v[0] = (u[0] * 2.0 - u[1] * 5.0 + u[2] * 4.0 - u[3]) * s;
    v[n - 1] = (u[n - 4] * -1.0 + u[n - 3] * 4.0 - u[n - 2] * 5.0 + u[n - 1] * 2.0) * s;
    return d;
  }
  if (order == 4) {
    if (n < 6) throw std::invalid_argument("differentiate: grid too small for order 4");
    const double s = 1.0 / (h * h * h * h);
    for (std::size_t i = 2; i + 2 < n; ++i)
      v[i] = (u[i - 2] - u[i - 1] * 4.0 + u[i] * 6.0 - u[i + 1] * 4.0 + u[i + 2]) * s;
    v[0] = (u[0] * 3.0 - u[1] * 14.0 + u[2] * 26.0 - u[3] * 24.0 + u[4] * 11.0 - u[5] * 2.0) * s;
    v[1] = (u[0] * 2.0 - u[1] * 9.0 + u[2] * 16.0 - u[3] * 14.0 + u[4] * 6.0 - u[5]) * s;
    v[n - 1] =
        (u[n - 1] * 3.0 - u[n - 2] * 14.0 + u[n - 3] * 26.0 - u[n - 4] * 24.0 + u[n - 5] * 11.0 -
         u[n - 6] * 2.0) * s;
    v[n - 2] =
        (u[n - 1] * 2.0 - u[n - 2] * 9.0 + u[n - 3] * 16.0 - u[n - 4] * 14.0 + u[n - 5] * 6.0 -
         u[n - 6]) * s;
    return d;
  }
  throw std::invalid_argument("differentiate: order must be 1, 2 or 4");
}

}  // namespace splab
