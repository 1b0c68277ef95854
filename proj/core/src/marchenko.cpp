#include "splab/marchenko.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splab/derivative.hpp"
#include "splab/quadrature.hpp"
#include "splab/special.hpp"

namespace splab {

namespace {

void validate_spectral(const SpectralData& sd) {
  if (sd.beta < 1 || sd.beta % 2 == 0)
    throw std::domain_error("glm kernel: beta must be a positive odd integer");
  for (const BoundState& bs : sd.bound_states)
    if (!(bs.p > 0.0) || !std::isfinite(bs.p) || !std::isfinite(bs.q))
      throw std::domain_error("glm kernel: bound states need finite q and p > 0");
}

// Radius past which every |q_a Gamma(., p_a s^(beta+1))| term is below the
// cutoff; the gamma tail itself decays faster than the plain exponential used
// here, so this errs on the wide side.
double kernel_tail_radius(const SpectralData& sd, double cutoff_tol) {
  if (!(cutoff_tol > 0.0) || !(cutoff_tol < 1.0))
    throw std::invalid_argument("kernel tail: cutoff must be in (0,1)");
  double r = 0.0;
  for (const BoundState& bs : sd.bound_states) {
    if (bs.q == 0.0) continue;
    const double t = (-std::log(cutoff_tol) + std::max(0.0, std::log(std::abs(bs.q)))) / bs.p;
    r = std::max(r, std::max(std::sqrt(t), std::pow(t, 1.0 / double(sd.beta + 1))));
  }
  return r;
}

// Right-truncated compositions on the extended axis. Node additivity
// K(axis(i) + axis(j)) = ktr[i+j] turns int_{z_i}^inf f(z) K(z + y_j) dz into
// a weighted dot product along the table; the weight row for start node i is
// the Simpson rule on the remaining n_ext - i nodes.
class CompositionEngine {
 public:
  explicit CompositionEngine(const KernelTable& k) : t_(k) {
    if (k.kind != KernelTable::Kind::translation)
      throw std::invalid_argument("composition engine: need a translation kernel");
    if (k.n < 2 || k.n_ext < k.n || k.data.size() != 2 * k.n_ext - 1)
      throw std::invalid_argument("composition engine: malformed table");
    w_.resize(k.n_ext);
    for (std::size_t i = 0; i < k.n_ext; ++i) w_[i] = simpson_node_weights(k.n_ext - i);
  }

  std::size_t size() const { return t_.n_ext; }
  double step() const { return t_.h; }
  const KernelTable& table() const { return t_; }
  const std::vector<double>& start_weights(std::size_t i) const { return w_[i]; }

  // next(i,j) = int_{z_i}^inf prev(i,.) K(. + y_j), all i,j on the extended axis
  std::vector<double> compose(const std::vector<double>& prev) const {
    return compose_impl([&](std::size_t i, std::size_t k) { return prev[i * size() + k]; });
  }
  std::vector<double> compose_translation() const {
    const double* kd = t_.data.data();
    return compose_impl([kd](std::size_t i, std::size_t k) { return kd[i + k]; });
  }

  // corner (a,b < n) slice of int_{z_a}^inf table(., y_b) K(x_a + .)
  std::vector<double> corner_composition(const std::vector<double>& full) const {
    const std::size_t n = t_.n, m = size();
    const double* kd = t_.data.data();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      const std::vector<double>& wa = w_[a];
      double* row = out.data() + a * n;
      for (std::size_t k = a; k < m; ++k) {
        const double pv = t_.h * wa[k - a] * kd[a + k];
        if (pv == 0.0) continue;
        const double* src = full.data() + k * m;
        for (std::size_t b = 0; b < n; ++b) row[b] += pv * src[b];
      }
    }
    return out;
  }

 private:
  template <typename Prev>
  std::vector<double> compose_impl(Prev prev) const {
    const std::size_t m = size();
    const double* kd = t_.data.data();
    std::vector<double> out(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::vector<double>& wi = w_[i];
      double* row = out.data() + i * m;
      for (std::size_t k = i; k < m; ++k) {
        const double pv = t_.h * wi[k - i] * prev(i, k);
        if (pv == 0.0) continue;
        const double* kk = kd + k;
        for (std::size_t j = 0; j < m; ++j) row[j] += pv * kk[j];
      }
    }
    return out;
  }

  const KernelTable& t_;
  std::vector<std::vector<double>> w_;
};

KernelTable corner_table(const KernelTable& axis_src, std::vector<double> corner) {
  KernelTable t;
  t.kind = KernelTable::Kind::general;
  t.lo = axis_src.lo;
  t.h = axis_src.h;
  t.n = axis_src.n;
  t.n_ext = axis_src.n;
  t.data = std::move(corner);
  return t;
}

std::vector<double> corner_slice(const std::vector<double>& full, std::size_t m, std::size_t n) {
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = full[i * m + j];
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double glm_kernel(double x, const SpectralData& sd) {
  if (sd.reflection)
    throw std::invalid_argument("glm kernel: nonzero reflection is not supported");
  validate_spectral(sd);
  const double order = 1.0 / double(sd.beta + 1);
  double k = 0.0;
  for (const BoundState& bs : sd.bound_states) {
    if (bs.q == 0.0) continue;
    // odd beta: (-x)^(beta+1) = |x|^(beta+1)
    const double arg = bs.p * std::pow(std::abs(x), double(sd.beta + 1));
    k += bs.q * upper_incomplete_gamma(order, arg);
  }
  return k;
}

KernelTable sample_translation_kernel(const std::function<double(double)>& K, double lo,
                                      double hi, std::size_t n, double tail_radius) {
  if (!K) throw std::invalid_argument("sample_translation_kernel: empty kernel");
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("sample_translation_kernel: bad axis");
  if (!(tail_radius >= 0.0) || !std::isfinite(tail_radius))
    throw std::invalid_argument("sample_translation_kernel: bad tail radius");
  KernelTable t;
  t.kind = KernelTable::Kind::translation;
  t.lo = lo;
  t.h = (hi - lo) / double(n - 1);
  t.n = n;
  t.n_ext = n + std::size_t(std::ceil(tail_radius / t.h));
  t.data.resize(2 * t.n_ext - 1);
  for (std::size_t k = 0; k < t.data.size(); ++k) {
    const double v = K(2.0 * lo + double(k) * t.h);
    if (!std::isfinite(v))
      throw std::runtime_error("sample_translation_kernel: non-finite kernel sample");
    t.data[k] = v;
  }
  return t;
}

KernelTable sample_glm_kernel(const SpectralData& sd, double lo, double hi, std::size_t n,
                              double cutoff_tol) {
  if (sd.reflection)
    throw std::invalid_argument("sample_glm_kernel: nonzero reflection is not supported");
  validate_spectral(sd);
  const double radius = kernel_tail_radius(sd, cutoff_tol);
  return sample_translation_kernel([&sd](double s) { return glm_kernel(s, sd); }, lo, hi, n,
                                   radius);
}

KernelTable iterated_kernel(const KernelTable& K, int mu) {
  if (mu < 1) throw std::invalid_argument("iterated_kernel: mu must be >= 1");
  CompositionEngine eng(K);
  std::vector<double> cur = eng.compose_translation();
  for (int m = 2; m <= mu; ++m) cur = eng.compose(cur);
  return corner_table(K, corner_slice(cur, eng.size(), K.n));
}

NeumannResult neumann_solve(const SpectralData& sd, const NeumannConfig& cfg) {
  if (cfg.mu_max < 1) throw std::invalid_argument("neumann_solve: mu_max must be >= 1");
  if (!cfg.interval.bounded())
    throw std::invalid_argument("neumann_solve: certificate interval must be bounded");

  const KernelTable K =
      sample_glm_kernel(sd, cfg.corner.x_min, cfg.corner.x_max, cfg.corner.n, cfg.cutoff_tol);
  CompositionEngine eng(K);
  const std::size_t n = K.n;

  NeumannTrace tr;
  tr.ell = cfg.interval.length();
  if (cfg.eps_bound > 0.0) {
    tr.eps = cfg.eps_bound;
  } else {
    // sup |K(x+y)| for x,y in the interval: argument sweep over [2 lo, 2 hi]
    const std::size_t ns = 4001;
    for (std::size_t i = 0; i < ns; ++i) {
      const double s =
          2.0 * cfg.interval.lo + (2.0 * tr.ell) * double(i) / double(ns - 1);
      tr.eps = std::max(tr.eps, std::abs(glm_kernel(s, sd)));
    }
  }
  tr.contraction = std::abs(cfg.zeta) * tr.eps * tr.ell;
  tr.certificate_valid = tr.contraction < 1.0;
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) tr.k_sup = std::max(tr.k_sup, std::abs(K.data[k]));

  std::vector<std::vector<double>> snapshots;  // sigma after each iteration, corner
  std::vector<double> sigma(n * n, 0.0);
  std::vector<double> knu;  // current iterated kernel on the extended block
  double zeta_pow = 1.0;    // zeta^(nu-1)
  for (int nu = 1; nu <= cfg.mu_max; ++nu) {
    knu = (nu == 1) ? eng.compose_translation() : eng.compose(knu);
    std::vector<double> inc = eng.corner_composition(knu);
    for (double& v : inc) v *= zeta_pow;
    tr.deltas.push_back(max_abs(inc));
    tr.term_bounds.push_back(tr.eps * std::pow(tr.contraction, nu - 1) * tr.eps);
    for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] += inc[i];
    snapshots.push_back(sigma);
    zeta_pow *= cfg.zeta;
  }

  // -W = K - zeta sigma
  std::vector<double> w(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      w[a * n + b] = -K.data[a + b] + cfg.zeta * sigma[a * n + b];
  NeumannResult res;
  res.W = corner_table(K, std::move(w));

  tr.w_inf = max_abs(res.W.data);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      tr.w_plus_k_inf =
          std::max(tr.w_plus_k_inf, std::abs(res.W.data[a * n + b] + K.data[a + b]));
  for (int mu = 1; mu <= cfg.mu_max; ++mu)
    tr.remainder_env.push_back(tr.eps * std::pow(tr.contraction, mu) * tr.w_inf);

  // pairwise[m][v] = ||sigma_v - sigma_m||_inf, with sigma_0 = 0
  const std::size_t s = snapshots.size() + 1;
  tr.pairwise.assign(s, std::vector<double>(s, 0.0));
  for (std::size_t m = 0; m < s; ++m)
    for (std::size_t v = m + 1; v < s; ++v) {
      double d = 0.0;
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        const double lovalue = m == 0 ? 0.0 : snapshots[m - 1][i];
        d = std::max(d, std::abs(snapshots[v - 1][i] - lovalue));
      }
      tr.pairwise[m][v] = d;
    }

  res.trace = std::move(tr);
  return res;
}

DissolventResult dissolvent_kernel(const KernelTable& K, double zeta, int mu_max, Interval l) {
  if (mu_max < 0) throw std::invalid_argument("dissolvent_kernel: mu_max must be >= 0");
  CompositionEngine eng(K);
  const std::size_t n = K.n, m = eng.size();
  const double h = K.h;

  // snap the trace interval to axis nodes
  const auto snap = [&](double x) {
    const long long i = std::llround((x - K.lo) / h);
    if (i < 0 || i >= (long long)m || std::abs(K.lo + double(i) * h - x) > 1e-9 * std::max(1.0, std::abs(x)))
      throw std::invalid_argument("dissolvent_kernel: trace interval must lie on axis nodes");
    return std::size_t(i);
  };
  const std::size_t i0 = snap(l.lo), i1 = snap(l.hi);
  if (i1 <= i0) throw std::invalid_argument("dissolvent_kernel: empty trace interval");
  const std::vector<double> tw = simpson_node_weights(i1 - i0 + 1);

  DissolventResult res;
  DissolventState& st = res.state;

  std::vector<double> lam(m * m);  // Lambda_{mu-1} on the extended block
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) lam[i * m + j] = K.data[i + j];
  st.Lambda.push_back(corner_table(K, corner_slice(lam, m, n)));
  st.lambda_scalars.push_back(1.0);

  std::vector<double> p_full = lam;  // mu = 0 term, coeff 1
  double q_acc = 1.0;

  std::vector<double> kit;  // K_{mu-1} for mu >= 2
  double coeff = 1.0;       // (-zeta)^mu / mu!
  for (int mu = 1; mu <= mu_max; ++mu) {
    double lam_mu = 0.0;
    for (std::size_t t = 0; t + i0 <= i1; ++t)
      lam_mu += tw[t] * lam[(i0 + t) * m + (i0 + t)];
    lam_mu *= h;

    std::vector<double> next(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::vector<double>& wi = eng.start_weights(i);
      double* row = next.data() + i * m;
      for (std::size_t j = 0; j < m; ++j) row[j] = lam_mu * K.data[i + j];
      for (std::size_t k = i; k < m; ++k) {
        const double kv = mu == 1 ? K.data[i + k] : kit[i * m + k];
        const double pv = -zeta * h * wi[k - i] * kv;
        if (pv == 0.0) continue;
        const double* src = lam.data() + k * m;
        for (std::size_t j = 0; j < m; ++j) row[j] += pv * src[j];
      }
    }
    lam = std::move(next);

    st.lambda_scalars.push_back(lam_mu);
    st.Lambda.push_back(corner_table(K, corner_slice(lam, m, n)));
    coeff *= -zeta / double(mu);
    q_acc += coeff * lam_mu;
    for (std::size_t i = 0; i < p_full.size(); ++i) p_full[i] += coeff * lam[i];

    if (mu < mu_max) kit = (mu == 1) ? eng.compose_translation() : eng.compose(kit);
  }

  st.P = corner_table(K, corner_slice(p_full, m, n));
  st.Q = q_acc;
  if (std::abs(q_acc) < 1e-12) {
    res.singular = true;
    return res;
  }
  for (double& v : p_full) v /= q_acc;
  res.Xi = corner_table(K, corner_slice(p_full, m, n));
  std::vector<double> w = eng.corner_composition(p_full);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) w[a * n + b] = -K.data[a + b] + zeta * w[a * n + b];
  res.W = corner_table(K, std::move(w));
  return res;
}

PotentialRecovery recover_potential(const KernelTable& W) {
  if (W.n < 5) throw std::invalid_argument("recover_potential: need at least 5 diagonal nodes");
  PotentialRecovery rec;
  rec.w = Grid(GridSpec{W.lo, W.axis(W.n - 1), W.n});
  for (std::size_t i = 0; i < W.n; ++i) rec.w.values[i] = 2.0 * W.at(i, i);
  rec.u = differentiate(rec.w, 1);
  const Grid cum = cumulative_integral(rec.u);
  const double total = cum.values.back();
  for (std::size_t i = 0; i < W.n; ++i)
    rec.ftc_error = std::max(rec.ftc_error,
                             std::abs(rec.w.values[i] + (total - cum.values[i])));
  return rec;
}

ResidueReport residue_constraint(const SpectralData& sd, double tol) {
  validate_spectral(sd);
  ResidueReport rep;
  if (!sd.reflection) return rep;  // R == 0: nothing to pin down
  rep.vacuous = false;
  for (const BoundState& bs : sd.bound_states) {
    ResidueCheck chk;
    chk.p = bs.p;
    chk.q = bs.q;
    const std::complex<double> pole(0.0, bs.p);
    const std::complex<double> target(0.0, bs.q);
    std::complex<double> lim{};
    for (int mdig = 1; mdig <= 6; ++mdig) {
      const std::complex<double> k = pole + std::pow(10.0, -mdig);
      lim = (k - pole) * sd.reflection(k);
    }
    chk.limit = lim;
    chk.deviation = std::abs(lim - target);
    chk.matched = chk.deviation <= tol;
    rep.all_matched = rep.all_matched && chk.matched;
    rep.checks.push_back(chk);
  }
  return rep;
}

namespace {

const BoundState& single_state(const SpectralData& sd) {
  if (sd.reflection || sd.beta != 1 || sd.bound_states.size() != 1)
    throw std::invalid_argument("one-iteration check: need R == 0, beta = 1, one bound state");
  validate_spectral(sd);
  return sd.bound_states.front();
}

}  // namespace

double sigma1(double x, double y, const SpectralData& sd, double tol) {
  const BoundState& bs = single_state(sd);
  const auto kf = [&](double s) { return bs.q * upper_incomplete_gamma(0.5, bs.p * s * s); };
  // integrands die like exp(-p s^2); a generous fixed radius keeps the nested
  // truncation error far below tol
  const double radius = std::sqrt(-std::log(1e-16) / bs.p) + 1.0;
  const auto k1 = [&](double z) {
    return integrate([&](double t) { return kf(z + t) * kf(t + y); }, Interval(z, z + radius),
                     0.1 * tol);
  };
  return integrate([&](double z) { return k1(z) * kf(x + z); }, Interval(x, x + radius), tol);
}

double one_iteration_printed(double x, double y, const SpectralData& sd,
                             OneIterationReading reading, double tol) {
  const BoundState& bs = single_state(sd);
  const double p = bs.p, q = bs.q;
  const double e = reading == OneIterationReading::squared ? p * p : p;
  const double rpi = std::sqrt(std::acos(-1.0));
  const auto gam = [&](double s) { return upper_incomplete_gamma(0.5, p * s * s); };

  const double gxy = gam(x + y);
  const double t1 = -q * (x + y) * gxy * gxy;
  const double t2 = q / (p * rpi) * gxy * std::exp(-e * (x + y) * (x + y));
  const double radius = std::sqrt(-std::log(1e-16) / std::min(e, p)) + 1.0;
  const double t3 =
      2.0 * q * p / rpi *
      integrate(
          [&](double z) {
            const double zy = z + y;
            return std::exp(-e * (x + z) * (x + z)) *
                   (zy * gam(zy) - q / (p * rpi) * std::exp(-e * zy * zy));
          },
          Interval(x, x + radius), tol);
  return t1 + t2 + t3;
}

std::vector<OneIterationSample> compare_one_iteration(
    const SpectralData& sd, const std::vector<std::pair<double, double>>& points) {
  std::vector<OneIterationSample> out;
  out.reserve(points.size());
  for (const auto& [x, y] : points) {
    OneIterationSample s;
    s.x = x;
    s.y = y;
    s.sigma = sigma1(x, y, sd);
    s.printed_consistent = one_iteration_printed(x, y, sd, OneIterationReading::consistent);
    s.printed_squared = one_iteration_printed(x, y, sd, OneIterationReading::squared);
    out.push_back(s);
  }
  return out;
}

}  // namespace splab
