#include "splab/homotopy.hpp"

namespace splab {

std::pair<double, bool> convergence_check(const std::function<double(double)>& kernel_diag,
                                          Interval interval) {
  if (!interval.bounded())
    throw std::invalid_argument("convergence_check: interval must be bounded");
  const double value = std::abs(1.0 - integrate(kernel_diag, interval, 1e-12));
  return {value, value <= 1.0};
}

HomotopySeries homotopy_solve(const HomotopyConfig& cfg) {
  if (cfg.b.imag() != 0.0)
    throw std::invalid_argument("homotopy_solve: complex coupling needs homotopy_solve_complex");
  return detail::homotopy_solve_impl<double>(cfg, cfg.b.real());
}

ComplexHomotopySeries homotopy_solve_complex(const HomotopyConfig& cfg) {
  return detail::homotopy_solve_impl<std::complex<double>>(cfg, cfg.b);
}

}  // namespace splab
