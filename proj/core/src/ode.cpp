#include "splab/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace splab {

Grid integrate_ode(const std::function<double(double, double)>& rhs, double y0,
                   Interval span, std::size_t steps) {
  if (!span.bounded()) throw std::invalid_argument("integrate_ode: span must be bounded");
  if (steps == 0) throw std::invalid_argument("integrate_ode: need steps > 0");
  Grid traj(GridSpec{span.lo, span.hi, steps + 1});
  const double h = traj.step();
  double y = y0;
  traj.values[0] = y;
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = traj.x(i);
    const double k1 = rhs(x, y);
    const double k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = rhs(x + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(y)) throw std::runtime_error("integrate_ode: trajectory left the finite range");
    traj.values[i + 1] = y;
  }
  return traj;
}

}  // namespace splab
