#pragma once

#include <cstddef>
#include <functional>

#include "splab/family.hpp"
#include "splab/grid.hpp"

namespace splab {

struct EigencountConfig {
  double c = 1.0;                 // free constant of the phase equation, > 0
  Interval domain{-25.0, 25.0};   // truncated stand-in for the real line
  std::size_t steps = 100000;
  bool attractive = true;         // closed-form wells enter with negative sign
  double marginal_tol = 1e-6;     // |J/pi - nearest integer| flagging threshold
};

struct CountResult {
  int count = 0;
  double j_final = 0.0;
  Grid trajectory;
  // J/pi within marginal_tol of an integer: floor is one ULP of quadrature
  // noise away from flipping, so both candidates are kept and the rounded
  // one reported.
  bool marginal = false;
  int count_floor = 0;
  int count_round = 0;
  bool endpoint_warning = false;  // |u| above 1e-10 at a domain end
};

// Integrates the phase equation J_x = c^{-1} sin^2 J - c u cos^2 J from
// J(lo) = 0 and reads the discrete-state count A = floor(J(hi)/pi). The sign
// convention makes wells (u < 0) advance the phase.
CountResult count_bound_states(const std::function<double(double)>& u,
                               const EigencountConfig& cfg);
CountResult count_bound_states(const Grid& u, const EigencountConfig& cfg);

struct SolitonCountReport {
  CountResult result;
  bool single = false;
  double well_min = 0.0;  // depth of the sampled well
};

// Builds the well from the closed-form t = 0 profile (negated when
// cfg.attractive) and counts its bound states. The single-soliton claim is
// recorded, not assumed.
SolitonCountReport check_single_soliton(const SolutionParams& prm, const EigencountConfig& cfg);

}  // namespace splab
