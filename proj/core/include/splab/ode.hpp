#pragma once

#include <cstddef>
#include <functional>

#include "splab/grid.hpp"

namespace splab {

// Classical fixed-step RK4 over a bounded span; returns the trajectory
// sampled at the steps+1 grid nodes. Throws if the state leaves the finite
// range mid-integration.
Grid integrate_ode(const std::function<double(double, double)>& rhs, double y0,
                   Interval span, std::size_t steps);

}  // namespace splab
