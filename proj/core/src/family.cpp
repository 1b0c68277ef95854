#include "splab/family.hpp"

#include <cmath>
#include <stdexcept>

#include "splab/derivative.hpp"
#include "splab/special.hpp"

namespace splab {

namespace {

double signed_offset(const SolutionParams& prm, double x) {
  return prm.sign_x == SignChoice::plus ? x + prm.x0 : x - prm.x0;
}

// Envelope on a prevalidated parameter set; the public entry points validate
// once and loops reuse this.
double envelope(const SolutionParams& prm, double x) {
  const double delta = std::log(2.0 * prm.a * prm.p * prm.p) / (2.0 * prm.p);
  const double s = signed_offset(prm, x);
  const double t = prm.branch == Branch::xi1 ? s + prm.xi1 - delta : s + prm.xi2 + delta;
  return prm.p * std::sqrt(2.0 * prm.a) * sech(prm.p * t);
}

double wave_at_t0(const SolutionParams& prm, double x) {
  const double s = signed_offset(prm, x);
  return 2.0 * prm.q * envelope(prm, x) * std::exp(-prm.p * prm.c1 * s * s) + prm.c2;
}

}  // namespace

void validate(const SolutionParams& prm) {
  if (!(prm.p > 0.0) || !(prm.a > 0.0))
    throw std::domain_error("solution family: need p > 0 and a > 0");
  if (!(prm.c1 >= 0.0)) throw std::domain_error("solution family: need c1 >= 0");
  for (double v : {prm.p, prm.q, prm.a, prm.b, prm.c1, prm.c2, prm.x0, prm.xi1, prm.xi2,
                   prm.omega})
    if (!std::isfinite(v)) throw std::domain_error("solution family: parameters must be finite");
}

double sech_special_xi(double p, double a) {
  if (!(p > 0.0) || !(a > 0.0)) throw std::domain_error("sech_special_xi: need p > 0 and a > 0");
  return std::log(2.0 * a * p * p) / (2.0 * p);
}

double eval_E(const SolutionParams& prm, double x) {
  validate(prm);
  return envelope(prm, x);
}

double eval_E_rational(const SolutionParams& prm, double x) {
  validate(prm);
  const double p = prm.p, a = prm.a;
  const double s = signed_offset(prm, x);
  if (prm.branch == Branch::xi1)
    return 4.0 * a * p * p * std::exp(p * s) * std::exp(p * prm.xi1) /
           (2.0 * a * p * p + std::exp(2.0 * p * (s + prm.xi1)));
  return 4.0 * a * p * p * std::exp(p * s) * std::exp(p * prm.xi2) /
         (1.0 + 2.0 * a * p * p * std::exp(2.0 * p * (s + prm.xi2)));
}

std::complex<double> eval_psi(const SolutionParams& prm, double x, double t) {
  validate(prm);
  const double sign = prm.sign_t == SignChoice::plus ? 1.0 : -1.0;
  const std::complex<double> phase = std::polar(1.0, sign * prm.omega * t);
  return (wave_at_t0(prm, x) - prm.c2) * phase + prm.c2;
}

double potential_phi(const SolutionParams& prm, double x) {
  validate(prm);
  const double e = envelope(prm, x);
  if (!(std::abs(e) > 1e-150))
    throw std::domain_error("potential_phi: envelope vanished; narrow the window");
  return -prm.a * std::log(e * e);
}

double dispersion_omega(double p, double a, double b) {
  if (!(p > 0.0) || !(a > 0.0)) throw std::domain_error("dispersion_omega: need p > 0 and a > 0");
  if (!std::isfinite(b)) throw std::domain_error("dispersion_omega: b must be finite");
  const double ap2 = a * p * p;
  const double d = 1.0 + 2.0 * ap2;
  const double num = p * p * (-1.0 + 12.0 * ap2 - 4.0 * ap2 * ap2) +
                     2.0 * d * d * (p - a * b * std::log(8.0 * ap2 / d));
  return num / (d * d);
}

namespace {

struct ResidualGrids {
  Grid u, phi, e;
  std::size_t first = 0, last = 0;  // inclusive window indices
};

// Samples the t = 0 profiles and locates the interior window where the
// envelope supports the log-potential.
ResidualGrids sample_profiles(const SolutionParams& prm, const GridSpec& grid) {
  validate(prm);
  if (grid.n < 5) throw std::invalid_argument("residuals: need at least 5 grid nodes");
  ResidualGrids rg{Grid(grid), Grid(grid), Grid(grid)};
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double e = envelope(prm, x);
    rg.e.values[i] = e;
    rg.u.values[i] = wave_at_t0(prm, x);
    // clamped: nodes below the window threshold never enter the norms but
    // their neighbors feed the stencils
    rg.phi.values[i] = -prm.a * std::log(std::max(e * e, 1e-300));
  }
  std::size_t first = grid.n, last = 0;
  for (std::size_t i = 1; i + 1 < grid.n; ++i) {
    if (std::abs(rg.e.values[i]) < 1e-12) continue;
    first = std::min(first, i);
    last = std::max(last, i);
  }
  if (first >= last) throw std::runtime_error("residuals: evaluation window is empty");
  rg.first = first;
  rg.last = last;
  return rg;
}

}  // namespace

FamilyResidualReport residual_report(const SolutionParams& prm, const GridSpec& grid) {
  const ResidualGrids rg = sample_profiles(prm, grid);
  const Grid d2u = differentiate(rg.u, 2);
  const Grid d2phi = differentiate(rg.phi, 2);
  const double s_omega = prm.sign_t == SignChoice::plus ? 1.0 : -1.0;

  FamilyResidualReport rep;
  rep.grid_step = grid.step();
  rep.window = Interval(grid.x(rg.first), grid.x(rg.last));
  rep.window_n = rg.last - rg.first + 1;
  double sum_s = 0.0, sum_p = 0.0;
  for (std::size_t i = rg.first; i <= rg.last; ++i) {
    const double u = rg.u.values[i];
    const double rp = d2phi.values[i] - u * u;
    const double rs = -d2u.values[i] + prm.b * rg.phi.values[i] * u + s_omega * prm.omega * u;
    sum_p += rp * rp;
    sum_s += rs * rs;
    rep.poisson_linf = std::max(rep.poisson_linf, std::abs(rp));
    rep.schrodinger_linf = std::max(rep.schrodinger_linf, std::abs(rs));
  }
  rep.poisson_l2 = std::sqrt(sum_p * rep.grid_step);
  rep.schrodinger_l2 = std::sqrt(sum_s * rep.grid_step);
  return rep;
}

double verify_poisson_identity(const SolutionParams& prm, const GridSpec& grid) {
  const ResidualGrids rg = sample_profiles(prm, grid);
  const Grid d2phi = differentiate(rg.phi, 2);
  double err = 0.0;
  for (std::size_t i = rg.first; i <= rg.last; ++i) {
    const double e = rg.e.values[i];
    err = std::max(err, std::abs(d2phi.values[i] - e * e));
  }
  return err;
}

}  // namespace splab
