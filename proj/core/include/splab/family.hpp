#pragma once

#include <complex>
#include <cstddef>

#include "splab/grid.hpp"

namespace splab {

enum class Branch { xi1, xi2 };
enum class SignChoice { plus, minus };

// Closed-form stationary solution psi = 2 q E exp(-p c1 (x +- x0)^2) e^(+-i w t) + c2
// with envelope E drawn from the two-branch log-potential family.
struct SolutionParams {
  double p = 1.0;   // decay eigenvalue scale
  double q = 0.5;   // amplitude factor; 2q = 1 makes u = E
  double a = 0.5;   // log-potential constant
  double b = 1.0;   // coupling
  double c1 = 0.0;  // Gaussian integration constant, >= 0
  double c2 = 0.0;  // additive integration constant
  double x0 = 0.0;  // center
  double xi1 = 0.0;
  double xi2 = 0.0;
  Branch branch = Branch::xi1;
  SignChoice sign_x = SignChoice::minus;  // the +- in (x +- x0)
  SignChoice sign_t = SignChoice::plus;   // the +- in e^(+-i w t)
  double omega = 0.0;
};

void validate(const SolutionParams& prm);

// Branch offset at which both branches reduce to p sqrt(2a) sech(p(x +- x0)):
// +delta for the xi1 branch, -delta for the xi2 branch.
double sech_special_xi(double p, double a);

// Envelope via the shifted-sech completion of the rational forms; finite for
// all x. Both branches are scaled sech pulses with branch-dependent shifts.
double eval_E(const SolutionParams& prm, double x);

// The rational form as printed: 4ap^2 e^(p s) e^(p xi) over the branch
// denominator. Overflows once p(s + xi) is large; kept as a diagnostic
// cross-check of eval_E where it is finite.
double eval_E_rational(const SolutionParams& prm, double x);

std::complex<double> eval_psi(const SolutionParams& prm, double x, double t);

// phi = -a ln(E^2); grows linearly in |x| as the envelope decays.
double potential_phi(const SolutionParams& prm, double x);

double dispersion_omega(double p, double a, double b);

struct FamilyResidualReport {
  double schrodinger_l2 = 0.0;
  double schrodinger_linf = 0.0;
  double poisson_l2 = 0.0;
  double poisson_linf = 0.0;
  double grid_step = 0.0;
  Interval window{0.0, 1.0};  // evaluated span after edge/decay exclusion
  std::size_t window_n = 0;
  int stencil_order = 2;
};

// Residuals of the coupled stationary system for u = psi(x,0):
// poisson: phi_xx - |u|^2, schrodinger: -u_xx + b phi u + s omega u with
// s = +1 for the e^(+i w t) pairing. Evaluated by centered differences on the
// interior window where E >= 1e-12 (phi needs the log).
FamilyResidualReport residual_report(const SolutionParams& prm, const GridSpec& grid);

// max over the interior window of |(-a ln E^2)_xx - E^2|, the identity the
// envelope is built to satisfy; second derivative by centered differences.
double verify_poisson_identity(const SolutionParams& prm, const GridSpec& grid);

}  // namespace splab
