#include "splab/quadrature.hpp"

#include <cmath>

namespace splab {

std::vector<double> simpson_node_weights(std::size_t m) {
  if (m == 0) return {};
  if (m == 1) return {0.0};
  if (m == 2) return {0.5, 0.5};
  if (m == 4) return {3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0};
  if (m % 2 == 1) {
    std::vector<double> w(m, 2.0 / 3.0);
    for (std::size_t i = 1; i < m; i += 2) w[i] = 4.0 / 3.0;
    w.front() = w.back() = 1.0 / 3.0;
    return w;
  }
  // Even count: composite Simpson over the first m-3 nodes, 3/8 tail on the
  // last four (the shared node collects both contributions).
  std::vector<double> w = simpson_node_weights(m - 3);
  w.resize(m, 0.0);
  w[m - 4] += 3.0 / 8.0;
  w[m - 3] += 9.0 / 8.0;
  w[m - 2] += 9.0 / 8.0;
  w[m - 1] += 3.0 / 8.0;
  return w;
}

namespace {

double simpson_refine(const std::function<double(double)>& f, double lo, double hi,
                      double tol) {
  const double len = hi - lo;
  const double ends = f(lo) + f(hi);
  std::size_t n = 8;  // intervals at the current level
  double interior = 0.0, odd = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(lo + len * double(i) / double(n));
    if (i % 2 == 0) interior += v; else odd += v;
  }
  double prev = len / double(n) / 3.0 * (ends + 2.0 * interior + 4.0 * odd);
  interior += odd;
  const std::size_t max_intervals = std::size_t(1) << 24;
  while (n < max_intervals) {
    n *= 2;
    odd = 0.0;
    const double h = len / double(n);
    for (std::size_t i = 1; i < n; i += 2) odd += f(lo + h * double(i));
    const double cur = h / 3.0 * (ends + 2.0 * interior + 4.0 * odd);
    if (!std::isfinite(cur)) throw std::runtime_error("integrate: non-finite integrand");
    if (std::abs(cur - prev) / 15.0 <= tol) return cur;
    interior += odd;
    prev = cur;
  }
  throw std::runtime_error("integrate: tolerance not met within the step budget");
}

}  // namespace

double integrate(const std::function<double(double)>& f, Interval iv, double tol,
                 const DecayProfile& decay) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: need tol > 0");
  double lo = iv.lo, hi = iv.hi;
  const double X = decay.radius();
  if (!std::isfinite(hi)) hi = std::max(lo, 0.0) + X;
  if (!std::isfinite(lo)) lo = std::min(hi, 0.0) - X;
  if (!(lo < hi)) throw std::invalid_argument("integrate: empty interval after truncation");
  return simpson_refine(f, lo, hi, tol);
}

namespace detail {

std::array<std::array<double, 5>, 4> interp5_interval_weights() {
  // 3-point Gauss-Legendre on each unit interval of the window.
  const double g = std::sqrt(3.0 / 5.0);
  const std::array<double, 3> gp = {-g, 0.0, g};
  const std::array<double, 3> gw = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  std::array<std::array<double, 5>, 4> rows{};
  for (std::size_t li = 0; li < 4; ++li) {
    for (std::size_t k = 0; k < 3; ++k) {
      const double s = double(li) + 0.5 * (1.0 + gp[k]);
      for (std::size_t m = 0; m < 5; ++m) {
        double L = 1.0;
        for (std::size_t r = 0; r < 5; ++r) {
          if (r == m) continue;
          L *= (s - double(r)) / (double(m) - double(r));
        }
        rows[li][m] += 0.5 * gw[k] * L;
      }
    }
  }
  return rows;
}

}  // namespace detail

}  // namespace splab
