#include "glassydicke/validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <deque>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "glassydicke/model.hpp"
#include "glassydicke/monte_carlo.hpp"
#include "glassydicke/oracle.hpp"
#include "glassydicke/phase_scan.hpp"
#include "glassydicke/rng.hpp"
#include "glassydicke/rs_solver.hpp"

namespace glassydicke {

namespace {

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// 1. photon-elimination identity across (N, seed, lambda, beta)
CriterionResult mapping_identity(const ValidationOptions& o) {
  CriterionResult r;
  r.name = "photon-elimination identity";
  const int n_max = o.quick ? 8 : 12;
  const int n_seeds = o.quick ? 20 : 100;
  const double lambdas[] = {0.0, 0.3, 1.0, 2.0};
  const double betas[] = {0.1, 1.0, 5.0};
  double worst = 0.0;
  std::string worst_at = "-";
  for (int n = 1; n <= n_max; ++n) {
    for (int s = 0; s < n_seeds; ++s) {
      const std::uint64_t seed = rng::derive(0xACC1, static_cast<std::uint64_t>(n),
                                             static_cast<std::uint64_t>(s));
      auto disorder = sample_disorder(n, 0.5, 1.0, seed);
      for (double lambda : lambdas) {
        for (double beta : betas) {
          const double res = verify_mapping(disorder, lambda, beta, o.threads);
          if (res > worst) {
            worst = res;
            worst_at = fmt("N=%d seed#%d lambda=%g beta=%g", n, s, lambda, beta);
          }
        }
      }
    }
  }
  r.passed = worst < 1e-10;
  r.detail = fmt("max residual %.3e (%s), threshold 1e-10", worst, worst_at.c_str());
  return r;
}

// 2. curie-weiss limit of the RS solver
CriterionResult curie_weiss_limit(const ValidationOptions&) {
  CriterionResult r;
  r.name = "curie-weiss limit";
  double lo = 0.01, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tanh(2.0 * mid) - mid > 0 ? lo : hi) = mid;
  }
  const double m_star = 0.5 * (lo + hi);
  RSParams p{0.5, 1.0, 0.0, 1.0};
  auto sol = solve_rs(p);
  const double dm = std::fabs(sol.m - m_star);
  const double dtheta = std::fabs(sol.theta - m_star * m_star);
  r.passed = sol.converged && dm < 1e-4 && dtheta < 1e-4;
  r.detail = fmt("m=%.10f vs bisection %.10f (|dm|=%.2e), |theta - m*^2|=%.2e, threshold 1e-4",
                 sol.m, m_star, dm, dtheta);
  return r;
}

PhaseLabel label_at_matter(double t, double jt) {
  RSParams p{t, jt, 1.0, 0.0};
  return classify(solve_rs(p), 1e-6);
}

// 3. critical lines from the linearized map
CriterionResult critical_lines(const ValidationOptions&) {
  CriterionResult r;
  r.name = "critical lines";
  const double tc_ferro = locate_boundary(
      [](double t) { return label_at_matter(t, 2.0); }, PhaseLabel::kFerromagnetic, 0.5, 3.0,
      1e-4);
  const double tc_glass = locate_boundary(
      [](double t) { return label_at_matter(t, 0.0); }, PhaseLabel::kSpinGlass, 0.5, 3.0,
      1e-4);
  const double e1 = std::fabs(tc_ferro - 2.0);
  const double e2 = std::fabs(tc_glass - 1.0);
  r.passed = e1 < 1e-3 && e2 < 1e-3;
  r.detail = fmt("T_c(jt=2)=%.6f (err %.2e), T_c(jt=0)=%.6f (err %.2e), threshold 1e-3",
                 tc_ferro, e1, tc_glass, e2);
  return r;
}

GridSpec matter_scan_grid(bool quick) {
  GridSpec g;
  g.axis1_name = "jtilde0_over_j";
  g.axis2_name = "t_over_j";
  g.a1_min = 0.0;
  g.a1_max = 2.0;
  g.a1_count = quick ? 21 : 41;
  g.a2_min = 0.05;
  g.a2_max = 2.0;
  g.a2_count = quick ? 20 : 40;
  g.j = 1.0;
  return g;
}

int count_label_components(const std::vector<PhasePoint>& pts, int n1, int n2) {
  std::vector<int> comp(pts.size(), -1);
  int comps = 0;
  for (std::size_t start = 0; start < pts.size(); ++start) {
    if (comp[start] >= 0) continue;
    ++comps;
    std::deque<std::size_t> queue{start};
    comp[start] = comps;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      const int i = static_cast<int>(cur) / n2;
      const int k = static_cast<int>(cur) % n2;
      const int di[] = {1, -1, 0, 0};
      const int dk[] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d], nk = k + dk[d];
        if (ni < 0 || ni >= n1 || nk < 0 || nk >= n2) continue;
        const std::size_t nxt = static_cast<std::size_t>(ni) * n2 + nk;
        if (comp[nxt] < 0 && pts[nxt].label == pts[cur].label) {
          comp[nxt] = comps;
          queue.push_back(nxt);
        }
      }
    }
  }
  return comps;
}

// 4. matter phase-diagram topology
CriterionResult matter_topology(const ValidationOptions& o) {
  CriterionResult r;
  r.name = "matter phase-diagram topology";
  GridSpec g = matter_scan_grid(o.quick);
  auto pts = scan_matter(g, {}, o.threads);

  long unconverged = 0;
  std::set<PhaseLabel> labels;
  for (const auto& p : pts) {
    if (!p.converged) ++unconverged;
    labels.insert(p.label);
  }
  const int comps = count_label_components(pts, g.a1_count, g.a2_count);

  // 2x2 plaquettes containing all three phases
  const double step1 = (g.a1_max - g.a1_min) / (g.a1_count - 1);
  const double step2 = (g.a2_max - g.a2_min) / (g.a2_count - 1);
  bool found_triple = false;
  double far_triple = 0.0;
  for (int i = 0; i + 1 < g.a1_count; ++i) {
    for (int k = 0; k + 1 < g.a2_count; ++k) {
      std::set<PhaseLabel> window;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          window.insert(pts[static_cast<std::size_t>(i + a) * g.a2_count + k + b].label);
      if (window.count(PhaseLabel::kParamagnetic) &&
          window.count(PhaseLabel::kFerromagnetic) &&
          window.count(PhaseLabel::kSpinGlass)) {
        found_triple = true;
        const double c1 = g.a1_value(i) + 0.5 * step1;
        const double c2 = g.a2_value(k) + 0.5 * step2;
        far_triple = std::max(
            far_triple, std::max(std::fabs(c1 - 1.0) / step1, std::fabs(c2 - 1.0) / step2));
      }
    }
  }

  r.passed = unconverged == 0 && comps == 3 && !labels.count(PhaseLabel::kUnclassified) &&
             found_triple && far_triple <= 1.5;
  r.detail = fmt("%d labeled regions (want 3), %ld unconverged, triple plaquette %s, "
                 "farthest %.2f cells from (1,1) (want <= 1.5)",
                 comps, unconverged, found_triple ? "found" : "missing", far_triple);
  return r;
}

// 5. optical boundary and shift equivalence
CriterionResult optical_boundary(const ValidationOptions& o) {
  CriterionResult r;
  r.name = "optical boundary and shift equivalence";
  auto optical_label = [](double lam) {
    RSParams p{1.5, 2.0 * lam * lam, 1.0, lam};
    return classify(solve_rs(p), 1e-6);
  };
  const double lam_star =
      locate_boundary(optical_label, PhaseLabel::kFerromagnetic, 0.0, 2.0, 1e-4);
  const double err = std::fabs(lam_star - std::sqrt(0.75));

  GridSpec opt;
  opt.a1_min = 0.0;
  opt.a1_max = 1.0;
  opt.a1_count = 3;  // lambda in {0, 0.5, 1} -> jtilde0 in {0, 0.5, 2}
  opt.a2_min = 0.25;
  opt.a2_max = 2.0;
  opt.a2_count = o.quick ? 8 : 15;
  opt.j = 1.0;
  opt.j0 = 0.0;
  auto optical = scan_optical(opt, {}, o.threads);

  GridSpec mat = opt;
  mat.a1_min = 0.0;
  mat.a1_max = 2.0;
  mat.a1_count = 5;  // {0, 0.5, 1, 1.5, 2}
  auto matter = scan_matter(mat, {}, o.threads);

  const std::pair<int, int> shared[] = {{0, 0}, {1, 1}, {2, 4}};
  long mismatches = 0;
  for (auto [li, mi] : shared)
    for (int k = 0; k < opt.a2_count; ++k) {
      const auto& a = optical[static_cast<std::size_t>(li) * opt.a2_count + k];
      const auto& b = matter[static_cast<std::size_t>(mi) * mat.a2_count + k];
      if (a.m != b.m || a.q != b.q || a.label != b.label) ++mismatches;
    }

  r.passed = err < 1e-4 && mismatches == 0;
  r.detail = fmt("lambda* = %.6f vs sqrt(0.75) = %.6f (err %.2e, threshold 1e-4); "
                 "%ld/%d shared nodes differ (want 0, exact)",
                 lam_star, std::sqrt(0.75), err, mismatches, 3 * opt.a2_count);
  return r;
}

// 6. Monte Carlo against exact enumeration
CriterionResult mc_vs_enumeration(const ValidationOptions& o) {
  CriterionResult r;
  r.name = "monte carlo vs exact enumeration";
  const int trials = o.quick ? 10 : 50;
  int ok = 0;
  double worst_pull = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = rng::derive(0xACC6, static_cast<std::uint64_t>(trial));
    auto disorder = sample_disorder(8, 0.3, 1.0, seed);
    auto model = build_effective(disorder, 0.5);
    auto exact = enumerate_classical(model, 1.0, o.threads);

    MCConfig c;
    c.sweeps = 40000;
    c.burn_in = 8000;
    c.ladder = geometric_ladder(1.0, 4.0, 6);
    c.exchange_interval = 2;
    c.block_count = 16;  // 2000-sweep blocks; glassy realizations decorrelate slowly
    c.seed = rng::derive(0xACC7, static_cast<std::uint64_t>(trial));
    auto est = run_parallel_tempering(model, c);
    const auto& e = est.rungs[0];
    const double pull_m = std::fabs(e.mean_abs_m - exact.mean_abs_m) / e.se_abs_m;
    const double pull_q = std::fabs(e.mean_m2 - exact.mean_s2) / e.se_m2;
    worst_pull = std::max(worst_pull, std::max(pull_m, pull_q));
    if (pull_m <= 3.0 && pull_q <= 3.0) ++ok;
  }
  const double frac = static_cast<double>(ok) / trials;
  r.passed = frac >= 0.95;
  r.detail = fmt("%d/%d trials inside 3 sigma (%.0f%%, want >= 95%%), worst pull %.2f", ok,
                 trials, 100.0 * frac, worst_pull);
  return r;
}

// 7. theta finite-size consistency
CriterionResult theta_consistency(const ValidationOptions& o) {
  CriterionResult r;
  r.name = "theta finite-size consistency";
  const double lambda = std::sqrt(0.5);
  RSParams rsp{0.5, 1.0, 0.2, lambda};
  auto rs = solve_rs(rsp);
  const double target = lambda * lambda * rs.m * rs.m;

  struct Tier {
    int n;
    int reals;
  };
  std::vector<Tier> tiers = o.quick
                                ? std::vector<Tier>{{16, 400}, {64, 300}}
                                : std::vector<Tier>{{64, 1600}, {256, 300}, {1024, 190}};
  std::vector<double> d(tiers.size()), se(tiers.size());
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    ModelParams p;
    p.n = tiers[i].n;
    p.lambda = lambda;
    p.j0 = 0.0;
    p.j = 0.2;
    p.t = 0.5;
    MCConfig c;
    c.sweeps = 12000;
    c.burn_in = 2000;
    c.ladder = {0.5};
    c.seed = 1717;
    auto avg = disorder_average(p, tiers[i].reals, c, o.threads);
    d[i] = std::fabs(avg.rungs[0].theta_hat - target);
    se[i] = avg.rungs[0].se_theta;
  }

  // Monotone decrease judged at 3 sigma: no consecutive increase may be
  // significant, and the overall decrease must itself be significant.
  bool no_significant_increase = true;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const double sigma = std::hypot(se[i], se[i + 1]);
    if (d[i + 1] - d[i] > 3.0 * sigma) no_significant_increase = false;
  }
  const double overall = d.front() - d.back();
  const double overall_sigma = std::hypot(se.front(), se.back());
  const bool overall_significant = overall > 3.0 * overall_sigma;

  r.passed = no_significant_increase && overall_significant;
  std::ostringstream detail;
  detail << "|theta_hat - lambda^2 m_RS^2|:";
  for (std::size_t i = 0; i < d.size(); ++i)
    detail << fmt(" N=%d: %.2e+-%.1e", tiers[i].n, d[i], se[i]);
  detail << fmt("; overall decrease %.2e = %.1f sigma (want > 3)", overall,
                overall / overall_sigma);
  r.detail = detail.str();
  return r;
}

// 8. quadrature and solver robustness over the full scan
CriterionResult solver_robustness(const ValidationOptions& o) {
  CriterionResult r;
  r.name = "quadrature and solver robustness";
  GridSpec g = matter_scan_grid(o.quick);
  SolveOptions o80, o160;
  o160.quad_order = 160;
  auto a = scan_matter(g, o80, o.threads);
  auto b = scan_matter(g, o160, o.threads);

  double worst_shift = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].converged || !b[i].converged) {
      worst_shift = 1.0;
      break;
    }
    worst_shift = std::max(worst_shift, std::fabs(a[i].m - b[i].m));
    worst_shift = std::max(worst_shift, std::fabs(a[i].q - b[i].q));
  }

  const QuadratureRule rule = gauss_hermite(80);
  double worst_grad = 0.0;
  const double h = 1e-5;
  for (const auto& p : a) {
    if (!p.converged) continue;
    RSParams rp{p.axis2 * g.j, p.axis1 * g.j, g.j, 0.0};
    const double gm =
        (rs_free_energy(p.m + h, p.q, rp, rule) - rs_free_energy(p.m - h, p.q, rp, rule)) /
        (2 * h);
    double gq;
    if (p.q >= h && p.q + h <= 1.0) {
      gq = (rs_free_energy(p.m, p.q + h, rp, rule) -
            rs_free_energy(p.m, p.q - h, rp, rule)) /
           (2 * h);
    } else {
      gq = (-3.0 * rs_free_energy(p.m, p.q, rp, rule) +
            4.0 * rs_free_energy(p.m, p.q + h, rp, rule) -
            rs_free_energy(p.m, p.q + 2 * h, rp, rule)) /
           (2 * h);
    }
    worst_grad = std::max(worst_grad, std::max(std::fabs(gm), std::fabs(gq)));
  }

  r.passed = worst_shift < 1e-10 && worst_grad < 1e-6;
  r.detail = fmt("order doubling max |d(m,q)| = %.2e (threshold 1e-10); "
                 "max |grad f| = %.2e over %zu nodes (threshold 1e-6)",
                 worst_shift, worst_grad, a.size());
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const ValidationOptions& opts,
                                            std::ostream& progress) {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::function<CriterionResult(const ValidationOptions&)>> criteria = {
      mapping_identity, curie_weiss_limit, critical_lines,    matter_topology,
      optical_boundary, mc_vs_enumeration, theta_consistency, solver_robustness,
  };
  std::vector<CriterionResult> results;
  results.reserve(criteria.size());
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    CriterionResult res = criteria[i](opts);
    res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    res.name = fmt("%zu. %s", i + 1, res.name.c_str());
    progress << (res.passed ? "[PASS] " : "[FAIL] ") << res.name << " - " << res.detail
             << fmt(" (%.1f s)", res.seconds) << std::endl;
    results.push_back(std::move(res));
  }
  int passed = 0;
  for (const auto& res : results)
    if (res.passed) ++passed;
  progress << passed << "/" << results.size() << " acceptance criteria passed" << std::endl;
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  if (results.empty()) return false;
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace glassydicke
