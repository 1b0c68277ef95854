#include "splab/boundstates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "splab/ode.hpp"

namespace splab {

CountResult count_bound_states(const std::function<double(double)>& u,
                               const EigencountConfig& cfg) {
  if (!u) throw std::invalid_argument("count_bound_states: empty potential");
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c))
    throw std::domain_error("count_bound_states: c must be a positive constant");
  if (!cfg.domain.bounded())
    throw std::invalid_argument("count_bound_states: domain must be bounded");
  if (cfg.steps == 0) throw std::invalid_argument("count_bound_states: steps must be positive");

  CountResult res;
  res.endpoint_warning =
      std::abs(u(cfg.domain.lo)) > 1e-10 || std::abs(u(cfg.domain.hi)) > 1e-10;

  const double c = cfg.c;
  res.trajectory = integrate_ode(
      [&u, c](double x, double j) {
        const double sj = std::sin(j), cj = std::cos(j);
        return sj * sj / c - c * u(x) * cj * cj;
      },
      0.0, cfg.domain, cfg.steps);
  res.j_final = res.trajectory.values.back();

  const double ratio = res.j_final / std::numbers::pi;
  res.count_floor = int(std::floor(ratio));
  res.count_round = int(std::llround(ratio));
  res.marginal = std::abs(ratio - double(std::llround(ratio))) < cfg.marginal_tol;
  res.count = std::max(0, res.marginal ? res.count_round : res.count_floor);
  return res;
}

CountResult count_bound_states(const Grid& u, const EigencountConfig& cfg) {
  if (!u.all_finite()) throw std::invalid_argument("count_bound_states: non-finite samples");
  return count_bound_states([&u](double x) { return u.interp(x); }, cfg);
}

SolitonCountReport check_single_soliton(const SolutionParams& prm, const EigencountConfig& cfg) {
  validate(prm);
  SolitonCountReport rep;
  const double sign = cfg.attractive ? -1.0 : 1.0;
  const auto well = [&prm, sign](double x) {
    return sign * std::real(eval_psi(prm, x, 0.0));
  };
  rep.result = count_bound_states(well, cfg);
  for (std::size_t i = 0; i < rep.result.trajectory.n; ++i)
    rep.well_min = std::min(rep.well_min, well(rep.result.trajectory.x(i)));
  rep.single = rep.result.count == 1;
  return rep;
}

}  // namespace splab
