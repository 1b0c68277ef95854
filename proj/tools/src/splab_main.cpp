// Command-line front end. Every run writes CSV profiles plus a JSON manifest
// recording the parameters, tolerances and diagnostics needed to reproduce it;
// numeric payloads are deterministic across identical invocations.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "splab/boundstates.hpp"
#include "splab/family.hpp"
#include "splab/grid.hpp"
#include "splab/homotopy.hpp"
#include "splab/io.hpp"
#include "splab/marchenko.hpp"
#include "splab/special.hpp"

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct CommonOpts {
  double grid_min = -20.0;
  double grid_max = 20.0;
  std::size_t grid_n = 4001;
  double tol = 1e-10;
  std::string out_dir = ".";
  std::string manifest;
  CLI::Option* grid_min_opt = nullptr;
  CLI::Option* grid_max_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  c.grid_min_opt =
      cmd->add_option("--grid-min", c.grid_min, "Axis lower edge")->capture_default_str();
  c.grid_max_opt =
      cmd->add_option("--grid-max", c.grid_max, "Axis upper edge")->capture_default_str();
  cmd->add_option("--grid-n", c.grid_n, "Axis node count")->capture_default_str();
  cmd->add_option("--tol", c.tol, "Tolerance (quadrature / table truncation)")
      ->capture_default_str();
  cmd->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--manifest", c.manifest,
                  "Manifest path (default: <out-dir>/<command>_manifest.json)");
}

void put_common(splab::RunManifest& man, const CommonOpts& c) {
  man.put("grid_min", c.grid_min);
  man.put("grid_max", c.grid_max);
  man.put("grid_n", c.grid_n);
  man.put("tol", c.tol);
}

// The manifest lands next to the outputs it lists, so entries are recorded
// as basenames; apart from wall_time_ms, repeated runs byte-match regardless
// of the output directory.
int finish(splab::RunManifest& man, const CommonOpts& c, Clock::time_point t0) {
  man.wall_time_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  fs::path mp = c.manifest.empty() ? fs::path(c.out_dir) / (man.command + "_manifest.json")
                                   : fs::path(c.manifest);
  man.write(mp);
  return 0;
}

// --- ham -------------------------------------------------------------------

struct HamOpts {
  double a_width = 1.0;
  double b = 0.0;
  double c2 = 1.0;
  double c4 = 1.0;
  int mu_max = 3;
  double lower_limit = 0.0;
  bool lower_limit_set = false;
  bool flip_c2_sign = false;
  bool override_convergence = false;
};

int run_ham(const CommonOpts& c, const HamOpts& o) {
  const Clock::time_point t0 = Clock::now();
  splab::HomotopyConfig cfg;
  cfg.b = {o.b, 0.0};
  cfg.a_width = o.a_width;
  cfg.C2 = o.c2;
  cfg.C4 = o.c4;
  cfg.mu_max = o.mu_max;
  cfg.grid = {c.grid_min, c.grid_max, c.grid_n};
  if (o.lower_limit_set) cfg.lower_limit = o.lower_limit;
  cfg.flip_c2_sign = o.flip_c2_sign;
  cfg.override_convergence = o.override_convergence;

  const splab::HomotopySeries series = splab::homotopy_solve(cfg);

  std::vector<std::string> cols{"x"};
  for (std::size_t m = 0; m < series.terms.size(); ++m) cols.push_back("u" + std::to_string(m));
  cols.push_back("sum");
  std::vector<std::vector<double>> rows(cfg.grid.n);
  for (std::size_t i = 0; i < cfg.grid.n; ++i) {
    rows[i].push_back(cfg.grid.x(i));
    for (const splab::Grid& t : series.terms) rows[i].push_back(t.values[i]);
    rows[i].push_back(series.partial_sums.back().values[i]);
  }
  fs::create_directories(c.out_dir);
  const fs::path csv = fs::path(c.out_dir) / "ham_series.csv";
  splab::write_csv(csv, cols, rows);

  splab::RunManifest man;
  man.command = "ham";
  put_common(man, c);
  man.put("a_width", o.a_width);
  man.put("b", o.b);
  man.put("c2", o.c2);
  man.put("c4", o.c4);
  man.put("mu_max", o.mu_max);
  if (o.lower_limit_set)
    man.put("lower_limit", o.lower_limit);
  else
    man.put("lower_limit", "-inf");
  man.put("flip_c2_sign", o.flip_c2_sign);
  man.put("override_convergence", o.override_convergence);
  man.put("conver_value", series.conver_value);
  man.put("conver_satisfied", series.conver_satisfied);
  man.put("override_used", series.override_used);
  man.add_output(csv.filename());
  return finish(man, c, t0);
}

// --- glm -------------------------------------------------------------------

struct GlmOpts {
  double p = 1.0;
  double q = 1.0;
  int beta = 1;
  double zeta = 1.0;
  int mu_max = 6;
  std::string route = "neumann";
  double interval_lo = 0.0;
  double interval_hi = 2.0;
  bool one_iteration_check = false;
};

int run_glm(const CommonOpts& c, const GlmOpts& o) {
  const Clock::time_point t0 = Clock::now();
  splab::SpectralData sd;
  sd.bound_states = {{o.p, o.q}};
  sd.beta = o.beta;

  splab::RunManifest man;
  man.command = "glm";
  put_common(man, c);
  man.put("p", o.p);
  man.put("q", o.q);
  man.put("beta", o.beta);
  man.put("zeta", o.zeta);
  man.put("mu_max", o.mu_max);
  man.put("route", o.route);
  man.put("interval_lo", o.interval_lo);
  man.put("interval_hi", o.interval_hi);
  fs::create_directories(c.out_dir);

  const splab::KernelTable* w_table = nullptr;
  splab::NeumannResult nres;
  splab::DissolventResult dres;
  if (o.route == "neumann") {
    splab::NeumannConfig ncfg;
    ncfg.zeta = o.zeta;
    ncfg.mu_max = o.mu_max;
    ncfg.interval = splab::Interval(o.interval_lo, o.interval_hi);
    ncfg.cutoff_tol = c.tol;
    ncfg.corner = {c.grid_min, c.grid_max, c.grid_n};
    nres = splab::neumann_solve(sd, ncfg);
    w_table = &nres.W;

    const splab::NeumannTrace& tr = nres.trace;
    if (!tr.certificate_valid)
      std::fprintf(stderr,
                   "warning: contraction |zeta| eps l = %.6g >= 1, error certificate void\n",
                   tr.contraction);
    man.put("eps", tr.eps);
    man.put("ell", tr.ell);
    man.put("contraction", tr.contraction);
    man.put("certificate_valid", tr.certificate_valid);
    man.put("k_sup", tr.k_sup);
    man.put("w_inf", tr.w_inf);
    man.put("w_plus_k_inf", tr.w_plus_k_inf);
    man.put("deltas", tr.deltas);
    man.put("term_bounds", tr.term_bounds);
    man.put("remainder_env", tr.remainder_env);

    std::vector<std::vector<double>> trace_rows;
    for (std::size_t i = 0; i < tr.deltas.size(); ++i)
      trace_rows.push_back({double(i + 1), tr.deltas[i], tr.term_bounds[i]});
    const fs::path tcsv = fs::path(c.out_dir) / "glm_trace.csv";
    splab::write_csv(tcsv, {"iteration", "delta", "bound"}, trace_rows);
    man.add_output(tcsv.filename());
  } else {
    const splab::KernelTable K =
        splab::sample_glm_kernel(sd, c.grid_min, c.grid_max, c.grid_n, c.tol);
    dres = splab::dissolvent_kernel(K, o.zeta, o.mu_max,
                                    splab::Interval(o.interval_lo, o.interval_hi));
    man.put("Q", dres.state.Q);
    man.put("lambda_scalars", dres.state.lambda_scalars);
    man.put("singular", dres.singular);
    if (dres.singular) {
      std::fprintf(stderr, "error: dissolvent denominator Q = %.6g is singular\n",
                   dres.state.Q);
      finish(man, c, t0);
      return 1;
    }
    w_table = &dres.W;
  }

  const splab::PotentialRecovery rec = splab::recover_potential(*w_table);
  man.put("ftc_error", rec.ftc_error);
  std::vector<std::vector<double>> rows(rec.w.n);
  for (std::size_t i = 0; i < rec.w.n; ++i)
    rows[i] = {rec.w.x(i), rec.w.values[i], rec.u.values[i]};
  const fs::path wcsv = fs::path(c.out_dir) / "glm_w_diag.csv";
  splab::write_csv(wcsv, {"x", "w", "u"}, rows);
  man.add_output(wcsv.filename());

  if (o.one_iteration_check) {
    const std::vector<std::pair<double, double>> pts{{0.1, 0.2}, {0.5, 0.5}, {1.0, 1.2}};
    const auto rep = splab::compare_one_iteration(sd, pts);
    std::vector<double> sig, cons, sqr;
    for (const splab::OneIterationSample& s : rep) {
      sig.push_back(s.sigma);
      cons.push_back(s.printed_consistent);
      sqr.push_back(s.printed_squared);
    }
    man.put("one_iter_sigma", sig);
    man.put("one_iter_printed_consistent", cons);
    man.put("one_iter_printed_squared", sqr);
  }
  return finish(man, c, t0);
}

// --- family / count --------------------------------------------------------

struct FamilyOpts {
  double p = 1.0;
  double a = 0.5;
  double q = 0.5;
  double b = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double x0 = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  std::string branch = "xi1";
  std::string sign_x = "minus";
  std::string sign_t = "plus";
  bool sech_special = false;
  double omega = 0.0;
  CLI::Option* omega_opt = nullptr;
};

void add_family_flags(CLI::App* cmd, FamilyOpts& o) {
  cmd->add_option("--p", o.p, "Decay eigenvalue scale, > 0")->capture_default_str();
  cmd->add_option("--a", o.a, "Log-potential constant, > 0")->capture_default_str();
  cmd->add_option("--q", o.q, "Amplitude factor")->capture_default_str();
  cmd->add_option("--b", o.b, "Coupling constant")->capture_default_str();
  cmd->add_option("--c1", o.c1, "Gaussian integration constant, >= 0")->capture_default_str();
  cmd->add_option("--c2", o.c2, "Additive integration constant")->capture_default_str();
  cmd->add_option("--x0", o.x0, "Pulse center")->capture_default_str();
  cmd->add_option("--xi1", o.xi1, "xi1-branch offset")->capture_default_str();
  cmd->add_option("--xi2", o.xi2, "xi2-branch offset")->capture_default_str();
  cmd->add_option("--branch", o.branch, "Envelope branch")
      ->check(CLI::IsMember({"xi1", "xi2"}))
      ->capture_default_str();
  cmd->add_option("--sign-x", o.sign_x, "Sign in (x +- x0)")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();
  cmd->add_option("--sign-t", o.sign_t, "Sign of the time phase")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();
  cmd->add_flag("--sech-special", o.sech_special,
                "Set xi1/xi2 to the offsets where the envelope is a centered sech");
  o.omega_opt = cmd->add_option("--omega", o.omega,
                                "Phase speed (default: from the dispersion relation)");
}

splab::SolutionParams make_params(const FamilyOpts& o) {
  splab::SolutionParams prm;
  prm.p = o.p;
  prm.a = o.a;
  prm.q = o.q;
  prm.b = o.b;
  prm.c1 = o.c1;
  prm.c2 = o.c2;
  prm.x0 = o.x0;
  prm.xi1 = o.xi1;
  prm.xi2 = o.xi2;
  prm.branch = o.branch == "xi1" ? splab::Branch::xi1 : splab::Branch::xi2;
  prm.sign_x = o.sign_x == "plus" ? splab::SignChoice::plus : splab::SignChoice::minus;
  prm.sign_t = o.sign_t == "plus" ? splab::SignChoice::plus : splab::SignChoice::minus;
  if (o.sech_special) {
    const double d = splab::sech_special_xi(o.p, o.a);
    prm.xi1 = d;
    prm.xi2 = -d;
  }
  prm.omega = (o.omega_opt && o.omega_opt->count() > 0)
                  ? o.omega
                  : splab::dispersion_omega(o.p, o.a, o.b);
  return prm;
}

void put_family(splab::RunManifest& man, const splab::SolutionParams& prm) {
  man.put("p", prm.p);
  man.put("a", prm.a);
  man.put("q", prm.q);
  man.put("b", prm.b);
  man.put("c1", prm.c1);
  man.put("c2", prm.c2);
  man.put("x0", prm.x0);
  man.put("xi1", prm.xi1);
  man.put("xi2", prm.xi2);
  man.put("branch", prm.branch == splab::Branch::xi1 ? "xi1" : "xi2");
  man.put("sign_x", prm.sign_x == splab::SignChoice::plus ? "plus" : "minus");
  man.put("sign_t", prm.sign_t == splab::SignChoice::plus ? "plus" : "minus");
  man.put("omega", prm.omega);
}

int run_family(const CommonOpts& c, const FamilyOpts& o) {
  const Clock::time_point t0 = Clock::now();
  const splab::SolutionParams prm = make_params(o);
  const splab::GridSpec grid{c.grid_min, c.grid_max, c.grid_n};

  std::vector<std::vector<double>> rows(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const double e = splab::eval_E(prm, x);
    const double phi = -prm.a * std::log(std::max(e * e, 1e-300));
    rows[i] = {x, e, phi, std::abs(splab::eval_psi(prm, x, 0.0))};
  }
  fs::create_directories(c.out_dir);
  const fs::path csv = fs::path(c.out_dir) / "family_profiles.csv";
  splab::write_csv(csv, {"x", "E", "phi", "psi_abs"}, rows);

  const splab::FamilyResidualReport rep = splab::residual_report(prm, grid);

  splab::RunManifest man;
  man.command = "family";
  put_common(man, c);
  put_family(man, prm);
  man.put("schrodinger_l2", rep.schrodinger_l2);
  man.put("schrodinger_linf", rep.schrodinger_linf);
  man.put("poisson_l2", rep.poisson_l2);
  man.put("poisson_linf", rep.poisson_linf);
  man.put("residual_grid_step", rep.grid_step);
  man.put("residual_window_lo", rep.window.lo);
  man.put("residual_window_hi", rep.window.hi);
  man.put("residual_window_n", rep.window_n);
  man.put("residual_stencil_order", rep.stencil_order);
  man.add_output(csv.filename());
  return finish(man, c, t0);
}

struct CountOpts {
  std::string input;
  std::string well;
  int lambda = 1;
  bool zero = false;
  bool from_family = false;
  double c = 1.0;
  std::size_t steps = 100000;
  bool repulsive = false;
  FamilyOpts family;
};

int run_count(const CommonOpts& c, const CountOpts& o) {
  const Clock::time_point t0 = Clock::now();
  const int sources = int(!o.input.empty()) + int(!o.well.empty()) + int(o.zero) +
                      int(o.from_family);
  if (sources != 1) {
    std::fprintf(stderr,
                 "error: pick exactly one potential source "
                 "(--input, --well, --zero or --family)\n");
    return 2;
  }

  splab::EigencountConfig cfg;
  cfg.c = o.c;
  cfg.steps = o.steps;
  cfg.attractive = !o.repulsive;

  splab::RunManifest man;
  man.command = "count";
  man.put("c", o.c);
  man.put("steps", o.steps);
  man.put("attractive", cfg.attractive);

  splab::CountResult res;
  if (o.zero) {
    cfg.domain = splab::Interval(c.grid_min, c.grid_max);
    res = splab::count_bound_states([](double) { return 0.0; }, cfg);
    man.put("source", "zero");
  } else if (!o.well.empty()) {
    if (o.well != "poschl-teller") throw std::invalid_argument("unknown well: " + o.well);
    if (o.lambda < 1) throw std::invalid_argument("--lambda must be >= 1");
    cfg.domain = splab::Interval(c.grid_min, c.grid_max);
    const double lam = o.lambda;
    res = splab::count_bound_states(
        [lam](double x) {
          const double s = splab::sech(x);
          return -lam * (lam + 1.0) * s * s;
        },
        cfg);
    man.put("source", o.well);
    man.put("lambda", o.lambda);
  } else if (!o.input.empty()) {
    const splab::Grid u = splab::read_potential_csv(o.input);
    const bool domain_given = c.grid_min_opt->count() > 0 || c.grid_max_opt->count() > 0;
    cfg.domain = domain_given ? splab::Interval(c.grid_min, c.grid_max)
                              : splab::Interval(u.x_min, u.x_max);
    res = splab::count_bound_states(u, cfg);
    man.put("source", o.input);
  } else {
    cfg.domain = splab::Interval(c.grid_min, c.grid_max);
    const splab::SolutionParams prm = make_params(o.family);
    const splab::SolitonCountReport rep = splab::check_single_soliton(prm, cfg);
    res = rep.result;
    put_family(man, prm);
    man.put("source", "family");
    man.put("single", rep.single);
    man.put("well_min", rep.well_min);
  }
  man.put("domain_lo", cfg.domain.lo);
  man.put("domain_hi", cfg.domain.hi);

  fs::create_directories(c.out_dir);
  std::vector<std::vector<double>> rows(res.trajectory.n);
  for (std::size_t i = 0; i < res.trajectory.n; ++i)
    rows[i] = {res.trajectory.x(i), res.trajectory.values[i]};
  const fs::path csv = fs::path(c.out_dir) / "count_trajectory.csv";
  splab::write_csv(csv, {"x", "J"}, rows);

  man.put("A", res.count);
  man.put("j_final", res.j_final);
  man.put("marginal", res.marginal);
  man.put("count_floor", res.count_floor);
  man.put("count_round", res.count_round);
  man.put("endpoint_warning", res.endpoint_warning);
  man.add_output(csv.filename());
  std::printf("A = %d\n", res.count);
  return finish(man, c, t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for stationary Schrodinger-Poisson solvers"};
  app.require_subcommand(1);
  // Given before the subcommand; keys live in [subcommand] sections and
  // command-line flags override file values.
  app.set_config("--config", "", "Key-value config file");

  CommonOpts ham_c;
  HamOpts ham_o;
  CLI::App* ham = app.add_subcommand("ham", "Homotopy series for the quartic reduction");
  add_common(ham, ham_c);
  ham->add_option("--a-width", ham_o.a_width, "sech width of the initial guess")
      ->capture_default_str();
  ham->add_option("--b", ham_o.b, "Coupling constant")->capture_default_str();
  ham->add_option("--c2", ham_o.c2, "Quadratic series coefficient")->capture_default_str();
  ham->add_option("--c4", ham_o.c4, "Quartic series coefficient")->capture_default_str();
  ham->add_option("--mu-max", ham_o.mu_max, "Series truncation order")->capture_default_str();
  CLI::Option* ll_opt = ham->add_option("--lower-limit", ham_o.lower_limit,
                                        "Finite lower limit of the series integrals");
  ham->add_flag("--flip-c2-sign", ham_o.flip_c2_sign,
                "Alternate sign reading of the quadratic series coefficient");
  ham->add_flag("--override-convergence", ham_o.override_convergence,
                "Proceed even if the separable-kernel criterion fails");

  CommonOpts glm_c;
  glm_c.grid_min = 0.0;
  glm_c.grid_max = 2.0;
  glm_c.grid_n = 201;
  glm_c.tol = 1e-12;
  GlmOpts glm_o;
  CLI::App* glm = app.add_subcommand("glm", "Integral-equation solve and potential recovery");
  add_common(glm, glm_c);
  glm->add_option("--p", glm_o.p, "Bound-state eigenvalue scale")->capture_default_str();
  glm->add_option("--q", glm_o.q, "Bound-state normalization")->capture_default_str();
  glm->add_option("--beta", glm_o.beta, "Kernel order (odd)")->capture_default_str();
  glm->add_option("--zeta", glm_o.zeta, "Series parameter")->capture_default_str();
  glm->add_option("--mu-max", glm_o.mu_max, "Iteration count")->capture_default_str();
  glm->add_option("--route", glm_o.route, "Solution route")
      ->check(CLI::IsMember({"neumann", "dissolvent"}))
      ->capture_default_str();
  glm->add_option("--interval-lo", glm_o.interval_lo, "Certificate/trace interval lower end")
      ->capture_default_str();
  glm->add_option("--interval-hi", glm_o.interval_hi, "Certificate/trace interval upper end")
      ->capture_default_str();
  glm->add_flag("--one-iteration-check", glm_o.one_iteration_check,
                "Compare the first correction against its printed closed form");

  CommonOpts fam_c;
  FamilyOpts fam_o;
  CLI::App* fam = app.add_subcommand("family", "Closed-form soliton family profiles");
  add_common(fam, fam_c);
  add_family_flags(fam, fam_o);

  CommonOpts cnt_c;
  cnt_c.grid_min = -25.0;
  cnt_c.grid_max = 25.0;
  CountOpts cnt_o;
  CLI::App* cnt = app.add_subcommand("count", "Bound-state count via the phase equation");
  add_common(cnt, cnt_c);
  cnt->add_option("--input", cnt_o.input, "Potential CSV with header x,u");
  cnt->add_option("--well", cnt_o.well, "Reference well family")
      ->check(CLI::IsMember({"poschl-teller"}));
  cnt->add_option("--lambda", cnt_o.lambda, "Reference well depth index")
      ->capture_default_str();
  cnt->add_flag("--zero", cnt_o.zero, "Count on the zero potential");
  cnt->add_flag("--family", cnt_o.from_family, "Build the well from the closed-form family");
  cnt->add_option("--c", cnt_o.c, "Free positive constant of the phase equation")
      ->capture_default_str();
  cnt->add_option("--steps", cnt_o.steps, "Integration steps")->capture_default_str();
  cnt->add_flag("--repulsive", cnt_o.repulsive, "Flip the sign of the closed-form well");
  add_family_flags(cnt, cnt_o.family);

  double disp_p = 0.0, disp_a = 0.0, disp_b = 0.0;
  CLI::App* disp = app.add_subcommand("dispersion", "Print the phase speed only");
  disp->add_option("--p", disp_p, "Decay eigenvalue scale")->required();
  disp->add_option("--a", disp_a, "Log-potential constant")->required();
  disp->add_option("--b", disp_b, "Coupling constant")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  ham_o.lower_limit_set = ll_opt->count() > 0;

  try {
    if (*ham) return run_ham(ham_c, ham_o);
    if (*glm) return run_glm(glm_c, glm_o);
    if (*fam) return run_family(fam_c, fam_o);
    if (*cnt) return run_count(cnt_c, cnt_o);
    if (*disp) {
      std::printf("%.16e\n", splab::dispersion_omega(disp_p, disp_a, disp_b));
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
