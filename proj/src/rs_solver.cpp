#include "glassydicke/rs_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace glassydicke {

const char* to_string(RSBranch b) {
  return b == RSBranch::kFerroStart ? "ferro-start" : "zero-m-branch";
}

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143268;
constexpr double kSqrt2 = 1.4142135623730951;

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double log2cosh(double x) {
  double ax = std::fabs(x);
  return ax + std::log1p(std::exp(-2.0 * ax));
}

// GH handles strip-analytic integrands up to roughly this argument scale at
// a given order (empirical: error < ~1e-13).
double plain_rule_limit(int order) { return 0.65 * std::sqrt(order / 80.0); }

// Panels covering the decay range of tanh(u)-1 and log(1+e^{-2u}); both are
// below 1e-18 past u = 21.
constexpr double kPanels[] = {0.0, 2.0, 6.0, 12.0, 21.0};
constexpr int kPanelCount = 4;

int panel_order(int rule_order) { return std::clamp(rule_order / 5, 12, 48); }

// Accumulates the three localized corrections in one pass over u > 0:
//   diff = Int (phi((u+a)/b) - phi((u-a)/b))/b * (1 - tanh(u)) du
//   sech = Int (phi((u-a)/b) + phi((u+a)/b))/b * sech^2(u) du
//   soft = Int (phi((u-a)/b) + phi((u+a)/b))/b * log(1+e^{-2u}) du
struct Corrections {
  double diff = 0.0;
  double sech = 0.0;
  double soft = 0.0;
};

Corrections split_corrections(double a, double b, int rule_order) {
  const QuadratureRule& gl = cached_legendre(panel_order(rule_order));
  Corrections c;
  for (int p = 0; p < kPanelCount; ++p) {
    const double lo = kPanels[p], hi = kPanels[p + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int k = 0; k < gl.order; ++k) {
      const double u = mid + half * gl.nodes[k];
      const double w = half * gl.weights[k];
      const double km = norm_pdf((u - a) / b) / b;
      const double kp = norm_pdf((u + a) / b) / b;
      const double e = std::exp(-2.0 * u);
      const double r = 2.0 * e / (1.0 + e);              // 1 - tanh(u)
      const double s = 4.0 * e / ((1.0 + e) * (1.0 + e));  // sech^2(u)
      c.diff += w * (kp - km) * r;
      c.sech += w * (km + kp) * s;
      c.soft += w * (km + kp) * std::log1p(e);
    }
  }
  return c;
}

}  // namespace

TanhMoments gaussian_tanh_moments(double a, double b, const QuadratureRule& rule) {
  if (!(b >= 0.0)) throw std::invalid_argument("gaussian_tanh_moments: b must be >= 0");
  if (b == 0.0) {
    double t = std::tanh(a);
    return {t, t * t};
  }
  const double sign = a < 0.0 ? -1.0 : 1.0;
  a = std::fabs(a);
  TanhMoments out;
  if (b <= plain_rule_limit(rule.order)) {
    double tm = 0.0, ts = 0.0;
    for (int k = 0; k < rule.order; ++k) {
      double t = std::tanh(a + b * rule.nodes[k]);
      tm += rule.weights[k] * t;
      ts += rule.weights[k] * t * t;
    }
    out.tanh_mean = tm;
    out.tanh_sq_mean = ts;
  } else {
    Corrections c = split_corrections(a, b, rule.order);
    out.tanh_mean = std::erf(a / (kSqrt2 * b)) + c.diff;
    out.tanh_sq_mean = 1.0 - c.sech;
  }
  if (a == 0.0) out.tanh_mean = 0.0;  // odd integrand
  out.tanh_mean *= sign;
  return out;
}

double gaussian_log2cosh(double a, double b, const QuadratureRule& rule) {
  if (!(b >= 0.0)) throw std::invalid_argument("gaussian_log2cosh: b must be >= 0");
  if (b == 0.0) return log2cosh(a);
  a = std::fabs(a);
  if (b <= plain_rule_limit(rule.order)) {
    double acc = 0.0;
    for (int k = 0; k < rule.order; ++k)
      acc += rule.weights[k] * log2cosh(a + b * rule.nodes[k]);
    return acc;
  }
  Corrections c = split_corrections(a, b, rule.order);
  // E|a+bz| in closed form plus the softplus remainder
  return a * std::erf(a / (kSqrt2 * b)) + 2.0 * b * norm_pdf(a / b) + c.soft;
}

RSMapResult rs_map(double m, double q, const RSParams& p, const QuadratureRule& rule) {
  if (!(q >= 0.0)) throw std::invalid_argument("rs_map: q must be >= 0");
  const double beta = p.beta();
  TanhMoments mom =
      gaussian_tanh_moments(beta * p.jtilde0 * m, beta * p.j * std::sqrt(q), rule);
  return {m == 0.0 ? 0.0 : mom.tanh_mean, mom.tanh_sq_mean};
}

double rs_free_energy(double m, double q, const RSParams& p, const QuadratureRule& rule) {
  if (!(q >= 0.0) || !(q <= 1.0))
    throw std::invalid_argument("rs_free_energy: q must be in [0,1]");
  const double beta = p.beta();
  const double one_minus_q = 1.0 - q;
  return -0.25 * beta * p.j * p.j * one_minus_q * one_minus_q +
         0.5 * p.jtilde0 * m * m -
         gaussian_log2cosh(beta * p.jtilde0 * m, beta * p.j * std::sqrt(q), rule) / beta;
}

double photon_order(double m, double lambda) { return lambda * lambda * m * m; }

namespace {

struct BranchState {
  double m = 0.0;
  double q = 0.0;
  bool converged = false;
  long iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
};

BranchState damped_iterate(double m0, double q0, const RSParams& p, const SolveOptions& o,
                           const QuadratureRule& rule, RSBranch tag) {
  BranchState st;
  st.m = m0;
  st.q = q0;
  const double eta = o.damping;
  double checkpoint_update = std::numeric_limits<double>::infinity();
  for (long it = 1; it <= o.max_iter; ++it) {
    RSMapResult next = rs_map(st.m, st.q, p, rule);
    double mn = (1.0 - eta) * st.m + eta * next.m;
    double qn = (1.0 - eta) * st.q + eta * next.q;
    double update = std::max(std::fabs(mn - st.m), std::fabs(qn - st.q));
    st.m = mn;
    st.q = qn;
    st.iterations = it;
    st.residual = update;
    if (o.observer) o.observer(tag, it, st.m, st.q);
    if (update < o.tol) {
      st.converged = true;
      return st;
    }
    // Critically slow contraction cannot finish inside the budget; bail out
    // early so the fallback can take over.
    if ((it & 1023) == 0 && update > 100.0 * o.tol) {
      if (update >= checkpoint_update) return st;  // not contracting
      double rate = std::log(update / checkpoint_update) / 1024.0;  // < 0
      double needed = std::log(o.tol / update) / rate;
      if (it + static_cast<long>(needed) > o.max_iter) return st;
      checkpoint_update = update;
    }
  }
  return st;
}

// Fixed point of q -> Q(m, q) at pinned m, by bisection. Counts map
// evaluations into *evals.
double bisect_q_at_m(double m, const RSParams& p, const QuadratureRule& rule, long* evals) {
  auto surplus = [&](double q) {
    ++*evals;
    return rs_map(m, q, p, rule).q - q;
  };
  double lo = 0.0;
  if (m == 0.0) {
    // q = 0 is always a fixed point; a nontrivial root exists only when the
    // map leaves the diagonal upward near the origin.
    lo = 1e-9;
    if (surplus(lo) <= 0.0) return 0.0;
  }
  double hi = 1.0;  // Q(m, 1) < 1 always
  for (int i = 0; i < 60 && hi - lo > 1e-15; ++i) {
    double mid = 0.5 * (lo + hi);
    (surplus(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BranchState bisect_branch(RSBranch tag, const RSParams& p, const QuadratureRule& rule) {
  BranchState st;
  long evals = 0;
  if (tag == RSBranch::kZeroM) {
    st.m = 0.0;
    st.q = bisect_q_at_m(0.0, p, rule, &evals);
  } else {
    auto surplus = [&](double m) {
      double q = bisect_q_at_m(m, p, rule, &evals);
      ++evals;
      return rs_map(m, q, p, rule).m - m;
    };
    // Largest positive root of m = M(m, q*(m)), if any.
    double lo = 0.0, hi = 0.0;
    if (surplus(0.999) > 0.0) {
      lo = 0.999;
      hi = 1.0;
    } else {
      const double grid[] = {0.95, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3,
                             0.2,  0.1, 0.05, 0.02, 0.01, 0.003, 0.001};
      double upper = 0.999;
      for (double g : grid) {
        if (surplus(g) > 0.0) {
          lo = g;
          hi = upper;
          break;
        }
        upper = g;
      }
    }
    if (hi == 0.0) {
      // no ordered solution on this branch; collapse to the zero-m result
      st.m = 0.0;
      st.q = bisect_q_at_m(0.0, p, rule, &evals);
    } else {
      for (int i = 0; i < 60 && hi - lo > 1e-15; ++i) {
        double mid = 0.5 * (lo + hi);
        (surplus(mid) > 0.0 ? lo : hi) = mid;
      }
      st.m = 0.5 * (lo + hi);
      st.q = bisect_q_at_m(st.m, p, rule, &evals);
    }
  }
  RSMapResult at = rs_map(st.m, st.q, p, rule);
  ++evals;
  st.residual = std::max(std::fabs(at.m - st.m), std::fabs(at.q - st.q));
  st.converged = true;
  st.iterations = evals;
  return st;
}

// Final tightening of a converged branch. The damped loop stops on update
// distance, which leaves the iterate up to tol/(eta(1-rho)) away from the
// fixed point; near phase boundaries that amplification ruins order-doubling
// comparisons. A few safeguarded Newton steps on G(x) = map(x) - x bring the
// point to ~1e-13 while exactly preserving the m = 0 line.
BranchState polish_fixed_point(BranchState st, const RSParams& p, const QuadratureRule& rule) {
  const double h = 1e-7;
  double m = st.m, q = std::clamp(st.q, 0.0, 1.0);
  auto surplus = [&](double mm, double qq) {
    RSMapResult r = rs_map(mm, qq, p, rule);
    return RSMapResult{r.m - mm, r.q - qq};
  };
  RSMapResult g = surplus(m, q);
  double best_norm = std::max(std::fabs(g.m), std::fabs(g.q));
  double best_m = m, best_q = q;
  for (int step = 0; step < 6 && best_norm > 1e-13; ++step) {
    double mn, qn;
    if (m == 0.0) {
      // 1-D in q; forward-difference slope of G_q
      const double hq = q + h <= 1.0 ? h : -h;
      const double dgq = (surplus(0.0, q + hq).q - g.q) / hq;
      if (dgq == 0.0) break;
      mn = 0.0;
      qn = q - g.q / dgq;
    } else {
      const double hm = std::fabs(m) + h <= 1.0 ? h : -h;
      const double hq = q + h <= 1.0 ? h : -h;
      RSMapResult gm = surplus(m + hm, q);
      RSMapResult gq = surplus(m, q + hq);
      const double a11 = (gm.m - g.m) / hm, a12 = (gq.m - g.m) / hq;
      const double a21 = (gm.q - g.q) / hm, a22 = (gq.q - g.q) / hq;
      const double det = a11 * a22 - a12 * a21;
      if (det == 0.0) break;
      mn = m - (a22 * g.m - a12 * g.q) / det;
      qn = q - (a11 * g.q - a21 * g.m) / det;
    }
    if (qn < 0.0 && qn > -1e-9) qn = 0.0;  // q = 0 is a boundary fixed point
    if (!(std::fabs(mn) <= 1.0) || !(qn >= 0.0) || !(qn <= 1.0)) break;
    m = mn;
    q = qn;
    g = surplus(m, q);
    const double norm = std::max(std::fabs(g.m), std::fabs(g.q));
    st.iterations += (m == 0.0) ? 2 : 4;
    if (norm >= best_norm) break;
    best_norm = norm;
    best_m = m;
    best_q = q;
  }
  st.m = best_m;
  st.q = best_q;
  st.residual = std::min(st.residual, best_norm);
  return st;
}

RSSolution finish_branch(BranchState st, RSBranch tag, const RSParams& p,
                         const QuadratureRule& rule, const SolveOptions& o) {
  RSSolution sol;
  if (std::fabs(st.m) < o.snap_m) st.m = 0.0;
  if (st.m < 0.0) st.m = -st.m;  // +-m symmetry; report the positive branch
  sol.m = st.m;
  sol.q = std::clamp(st.q, 0.0, 1.0);
  sol.converged = st.converged;
  sol.iterations = st.iterations;
  sol.residual = st.residual;
  sol.branch = tag;
  sol.free_energy = rs_free_energy(sol.m, sol.q, p, rule);
  sol.theta = photon_order(sol.m, p.lambda);
  return sol;
}

RSSolution run_branch(RSBranch tag, double m0, double q0, const RSParams& p,
                      const SolveOptions& o, const QuadratureRule& rule, bool warm_started) {
  BranchState st = damped_iterate(m0, q0, p, o, rule, tag);
  long spent = st.iterations;
  if (!st.converged && warm_started) {
    st = damped_iterate(0.999, 0.999, p, o, rule, tag);  // cold-start retry
    st.iterations += spent;
    spent = st.iterations;
  }
  if (!st.converged && o.bisection_fallback) {
    st = bisect_branch(tag, p, rule);
    st.iterations += spent;
  }
  if (st.converged) st = polish_fixed_point(st, p, rule);
  return finish_branch(st, tag, p, rule, o);
}

}  // namespace

RSSolution solve_rs_warm(const RSParams& p, const SolveOptions& o, const RSSolution* warm) {
  if (!(p.t > 0.0)) throw std::invalid_argument("solve_rs: t must be > 0");
  if (p.j < 0.0) throw std::invalid_argument("solve_rs: j must be >= 0");
  if (!(o.tol > 0.0)) throw std::invalid_argument("solve_rs: tol must be > 0");
  if (o.max_iter < 1) throw std::invalid_argument("solve_rs: max_iter must be >= 1");
  if (!(o.damping > 0.0) || !(o.damping <= 1.0))
    throw std::invalid_argument("solve_rs: damping must be in (0, 1]");
  const QuadratureRule rule = gauss_hermite(o.quad_order);

  bool warm_started = warm != nullptr && warm->m > 0.0;
  RSSolution ferro =
      warm_started ? run_branch(RSBranch::kFerroStart, warm->m, warm->q, p, o, rule, true)
                   : run_branch(RSBranch::kFerroStart, 0.999, 0.999, p, o, rule, false);
  RSSolution zero = run_branch(RSBranch::kZeroM, 0.0, 0.999, p, o, rule, false);

  if (ferro.converged && zero.converged)
    return zero.free_energy < ferro.free_energy ? zero : ferro;
  if (ferro.converged) return ferro;
  if (zero.converged) return zero;
  return zero.free_energy < ferro.free_energy ? zero : ferro;
}

RSSolution solve_rs(const RSParams& p, const SolveOptions& opts) {
  return solve_rs_warm(p, opts, nullptr);
}

}  // namespace glassydicke
