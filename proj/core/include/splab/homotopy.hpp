#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "splab/derivative.hpp"
#include "splab/grid.hpp"
#include "splab/quadrature.hpp"
#include "splab/special.hpp"

namespace splab {

struct ResidualNorms {
  double l2 = 0.0;
  double linf = 0.0;
  double grid_step = 0.0;
  std::size_t window_lo = 0;
  std::size_t window_hi = 0;  // one past the last index of the window
  int derivative_order = 0;
};

struct HomotopyConfig {
  std::complex<double> b{0.0, 0.0};
  double a_width = 1.0;
  double C2 = 1.0;
  double C4 = 1.0;
  int mu_max = 1;
  GridSpec grid{-20.0, 20.0, 4001};
  double lower_limit = -inf;       // -inf: integrals start at the left grid edge
  bool flip_c2_sign = false;       // alternate sign reading of the series template
  bool override_convergence = false;
};

template <typename S>
struct HomotopySeriesT {
  std::vector<BasicGrid<S>> terms;
  std::vector<BasicGrid<S>> partial_sums;
  double conver_value = 0.0;
  bool conver_satisfied = false;
  bool override_used = false;
};

using HomotopySeries = HomotopySeriesT<double>;
using ComplexHomotopySeries = HomotopySeriesT<std::complex<double>>;

// Cubic deformation term Xi_mu = sum_{nu<=mu} u_{mu-nu} sum_{beta<=nu} u_beta u_{nu-beta}.
template <typename S>
BasicGrid<S> deformation_constraint(const std::vector<BasicGrid<S>>& terms, std::size_t mu) {
  if (terms.size() < mu + 1)
    throw std::invalid_argument("deformation_constraint: need at least mu+1 terms");
  for (const auto& t : terms)
    if (!t.same_axis(terms.front()))
      throw std::invalid_argument("deformation_constraint: mismatched grids");
  BasicGrid<S> xi = terms.front();
  const std::size_t n = xi.n;
  std::fill(xi.values.begin(), xi.values.end(), S{});
  for (std::size_t nu = 0; nu <= mu; ++nu) {
    const auto& outer = terms[mu - nu].values;
    for (std::size_t beta = 0; beta <= nu; ++beta) {
      const auto& f = terms[beta].values;
      const auto& g = terms[nu - beta].values;
      for (std::size_t i = 0; i < n; ++i) xi.values[i] += outer[i] * f[i] * g[i];
    }
  }
  return xi;
}

// Left side of the separable-kernel convergence criterion, |1 - int K(y,y) dy|.
std::pair<double, bool> convergence_check(const std::function<double(double)>& kernel_diag,
                                          Interval interval);

namespace detail {

template <typename S>
HomotopySeriesT<S> homotopy_solve_impl(const HomotopyConfig& cfg, S b) {
  if (!(cfg.a_width > 0.0)) throw std::domain_error("homotopy_solve: need a_width > 0");
  if (cfg.mu_max < 0) throw std::domain_error("homotopy_solve: need mu_max >= 0");
  if (cfg.grid.n < 5) throw std::invalid_argument("homotopy_solve: grid too small");

  HomotopySeriesT<S> out;
  // Series kernel diagonal K(y,y) = -b (C2/2 + C4/6) y^3 over the grid span.
  const double moment =
      integrate([](double y) { return y * y * y; },
                Interval{cfg.grid.x_min, cfg.grid.x_max}, 1e-12);
  const double c2 = cfg.flip_c2_sign ? -cfg.C2 : cfg.C2;
  out.conver_value = std::abs(1.0 + b * S(c2 / 2.0 + cfg.C4 / 6.0) * S(moment));
  out.conver_satisfied = out.conver_value <= 1.0;
  out.override_used = !out.conver_satisfied && cfg.override_convergence;
  if (!out.conver_satisfied && !cfg.override_convergence)
    throw std::runtime_error("homotopy_solve: convergence criterion not satisfied");

  const double aw = cfg.a_width;
  BasicGrid<S> u0 = BasicGrid<S>::sample(cfg.grid, [aw](double x) { return S(sech(aw * x)); });
  out.terms.push_back(u0);
  out.partial_sums.push_back(u0);

  double prev_norm = u0.max_abs();
  int rising = 0;
  for (int mu = 1; mu <= cfg.mu_max; ++mu) {
    BasicGrid<S> xi = deformation_constraint(out.terms, std::size_t(mu - 1));
    BasicGrid<S> m1 = xi, m3 = xi;
    for (std::size_t i = 0; i < xi.n; ++i) {
      const double y = xi.x(i);
      m1.values[i] = xi.values[i] * y;
      m3.values[i] = xi.values[i] * (y * y * y);
    }
    const BasicGrid<S> I1 = cumulative_integral(m1);
    const BasicGrid<S> I3 = cumulative_integral(m3);
    S base1{}, base3{};
    if (std::isfinite(cfg.lower_limit)) {
      base1 = I1.interp(cfg.lower_limit);
      base3 = I3.interp(cfg.lower_limit);
    }
    BasicGrid<S> term = u0;
    for (std::size_t i = 0; i < term.n; ++i) {
      const double x = term.x(i);
      term.values[i] = -b * (S(c2 * x * x / 2.0) * (I1.values[i] - base1) +
                             S(cfg.C4 / 6.0) * (I3.values[i] - base3));
    }
    if (!term.all_finite()) throw std::runtime_error("homotopy_solve: non-finite series term");
    const double norm = term.max_abs();
    rising = norm > prev_norm ? rising + 1 : 0;
    if (rising >= 3) throw std::runtime_error("homotopy_solve: series diverging");
    prev_norm = norm;

    BasicGrid<S> sum = out.partial_sums.back();
    for (std::size_t i = 0; i < sum.n; ++i) sum.values[i] += term.values[i];
    out.terms.push_back(std::move(term));
    out.partial_sums.push_back(std::move(sum));
  }
  return out;
}

}  // namespace detail

HomotopySeries homotopy_solve(const HomotopyConfig& cfg);
ComplexHomotopySeries homotopy_solve_complex(const HomotopyConfig& cfg);

// Residual of the quartic reduction, r = u_xxxx - b u^3, interior norms.
template <typename S>
ResidualNorms residual_quartic(const BasicGrid<S>& u, S b) {
  const BasicGrid<S> u4 = differentiate(u, 4);
  ResidualNorms rep;
  rep.grid_step = u.step();
  rep.derivative_order = 4;
  rep.window_lo = 2;
  rep.window_hi = u.n - 2;
  double sq = 0.0;
  for (std::size_t i = rep.window_lo; i < rep.window_hi; ++i) {
    const S r = u4.values[i] - b * u.values[i] * u.values[i] * u.values[i];
    const double a = std::abs(r);
    sq += a * a;
    rep.linf = std::max(rep.linf, a);
  }
  rep.l2 = std::sqrt(sq * rep.grid_step);
  return rep;
}

// Residual of the uncoupled fourth-order scheme
//   u_xxxx = [ b |u|^2 u^3 + ((u_xx)^2 + 2 u_x u_xxx) u - 2 (u_xx)^2 u_x ] / u^2,
// evaluated where |u| exceeds rel_threshold * max|u|.
template <typename S>
ResidualNorms residual_uncoupled(const BasicGrid<S>& u, S b, double rel_threshold = 1e-6) {
  const BasicGrid<S> u1 = differentiate(u, 1);
  const BasicGrid<S> u2 = differentiate(u, 2);
  const BasicGrid<S> u3 = differentiate(u2, 1);
  const BasicGrid<S> u4 = differentiate(u, 4);
  const double cut = rel_threshold * u.max_abs();
  ResidualNorms rep;
  rep.grid_step = u.step();
  rep.derivative_order = 4;
  double sq = 0.0;
  std::size_t count = 0;
  bool window_open = false;
  for (std::size_t i = 2; i + 2 < u.n; ++i) {
    if (!(std::abs(u.values[i]) > cut)) continue;
    if (!window_open) { rep.window_lo = i; window_open = true; }
    rep.window_hi = i + 1;
    const S ui = u.values[i];
    const S num = b * S(std::norm(ui)) * ui * ui * ui +
                  (u2.values[i] * u2.values[i] + S(2.0) * u1.values[i] * u3.values[i]) * ui -
                  S(2.0) * u2.values[i] * u2.values[i] * u1.values[i];
    const S r = u4.values[i] - num / (ui * ui);
    const double a = std::abs(r);
    sq += a * a;
    rep.linf = std::max(rep.linf, a);
    ++count;
  }
  if (count == 0) throw std::runtime_error("residual_uncoupled: degenerate window, |u| too small");
  rep.l2 = std::sqrt(sq * rep.grid_step);
  return rep;
}

}  // namespace splab
