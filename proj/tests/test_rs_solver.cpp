#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "adaptive_gauss.hpp"
#include "glassydicke/model.hpp"
#include "glassydicke/oracle.hpp"
#include "glassydicke/rs_solver.hpp"

using namespace glassydicke;

namespace {

DisorderRealization zero_disorder(int n) {
  DisorderRealization d;
  d.n = n;
  d.couplings = PairTable(n);
  return d;
}

// scalar fixed-point oracle: root of m = tanh(c m), by bisection
double curie_weiss_root(double c) {
  double lo = 0.01, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (std::tanh(c * mid) - mid > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// independent spin-glass oracle: root of q = Int Dz tanh^2(beta J sqrt(q) z)
double sg_root(double beta_j) {
  auto surplus = [&](double q) {
    return test_oracle::gauss_expect([&](double z) {
             double t = std::tanh(beta_j * std::sqrt(q) * z);
             return t * t;
           }) -
           q;
  };
  double lo = 1e-6, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (surplus(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double fd_gradient_m(const RSParams& p, const QuadratureRule& rule, double m, double q,
                     double h = 1e-5) {
  return (rs_free_energy(m + h, q, p, rule) - rs_free_energy(m - h, q, p, rule)) / (2 * h);
}

double fd_gradient_q(const RSParams& p, const QuadratureRule& rule, double m, double q,
                     double h = 1e-5) {
  if (q >= h && q + h <= 1.0) {
    return (rs_free_energy(m, q + h, p, rule) - rs_free_energy(m, q - h, p, rule)) / (2 * h);
  }
  // second-order one-sided at the q = 0 edge
  return (-3.0 * rs_free_energy(m, q, p, rule) + 4.0 * rs_free_energy(m, q + h, p, rule) -
          rs_free_energy(m, q + 2 * h, p, rule)) /
         (2 * h);
}

}  // namespace

TEST_CASE("rs_map basics") {
  auto rule = gauss_hermite(80);
  RSParams p{0.5, 1.0, 1.0, 0.0};
  auto r = rs_map(0.0, 0.0, p, rule);
  CHECK(r.m == 0.0);
  CHECK(r.q == 0.0);

  // J = 0 collapses to a point evaluation
  RSParams cw{0.5, 1.0, 0.0, 0.0};
  auto rc = rs_map(0.4, 0.77, cw, rule);
  CHECK(rc.m == doctest::Approx(std::tanh(2.0 * 0.4)).epsilon(1e-15));
  CHECK(rc.q == doctest::Approx(std::pow(std::tanh(2.0 * 0.4), 2)).epsilon(1e-15));

  // frozen quadrature-oracle value for the q update at m = 0
  RSParams sg{0.5, 0.0, 1.0, 0.0};
  auto rs = rs_map(0.0, 0.5, sg, rule);
  CHECK(rs.m == 0.0);
  CHECK(rs.q == doctest::Approx(0.51997574566394889).epsilon(1e-12));

  CHECK_THROWS_AS(rs_map(0.1, -0.1, p, rule), std::invalid_argument);
}

TEST_CASE("rs_map is odd in m") {
  auto rule = gauss_hermite(80);
  RSParams p{0.7, 1.2, 0.9, 0.0};
  for (double m : {0.1, 0.5, 0.93}) {
    auto plus = rs_map(m, 0.6, p, rule);
    auto minus = rs_map(-m, 0.6, p, rule);
    CHECK(std::fabs(plus.m + minus.m) < 1e-15);
    CHECK(plus.q == minus.q);
  }
}

TEST_CASE("curie-weiss limit") {
  RSParams p{0.5, 1.0, 0.0, 1.0};
  auto sol = solve_rs(p);
  const double m_star = curie_weiss_root(2.0);
  CHECK(m_star == doctest::Approx(0.95750402407726876).epsilon(1e-12));
  CHECK(sol.converged);
  CHECK(sol.branch == RSBranch::kFerroStart);
  CHECK(std::fabs(sol.m - m_star) < 1e-9);
  CHECK(std::fabs(sol.q - sol.m * sol.m) < 1e-9);
  CHECK(std::fabs(sol.theta - m_star * m_star) < 1e-8);
  CHECK(sol.theta == doctest::Approx(0.91681395612416283).epsilon(1e-7));

  // closed-form free energy at the root
  const double f_closed =
      0.5 * m_star * m_star - 0.5 * std::log(2.0 * std::cosh(2.0 * m_star));
  CHECK(f_closed == doctest::Approx(-0.50983553399343462).epsilon(1e-14));
  CHECK(std::fabs(sol.free_energy - f_closed) < 1e-9);
}

TEST_CASE("paramagnet above both instability temperatures") {
  RSParams p{2.0, 1.0, 1.0, 0.0};
  auto sol = solve_rs(p);
  CHECK(sol.converged);
  CHECK(sol.m == 0.0);
  CHECK(sol.q < 1e-9);
}

TEST_CASE("spin-glass branch against the quadrature oracle") {
  RSParams p{0.5, 0.0, 1.0, 0.0};
  auto sol = solve_rs(p);
  CHECK(sol.converged);
  CHECK(sol.m == 0.0);
  CHECK(sol.q > 0.0);
  const double q_star = sg_root(2.0);
  CHECK(q_star == doctest::Approx(0.53036839205079489).epsilon(1e-10));
  CHECK(std::fabs(sol.q - q_star) < 1e-9);
  CHECK(sol.theta == 0.0);
}

TEST_CASE("free energy limits") {
  auto rule = gauss_hermite(80);
  // free spins: f = -T log 2 exactly at J = 0
  RSParams free_spins{50.0, 0.0, 0.0, 0.0};
  CHECK(rs_free_energy(0.0, 0.0, free_spins, rule) ==
        doctest::Approx(-50.0 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(rs_free_energy(0.0, -0.2, free_spins, rule), std::invalid_argument);
  CHECK_THROWS_AS(rs_free_energy(0.0, 1.2, free_spins, rule), std::invalid_argument);
}

TEST_CASE("stationarity of the free energy at converged solutions") {
  auto rule = gauss_hermite(80);
  std::vector<RSParams> pts = {
      {0.5, 1.0, 0.0, 1.0},  // curie-weiss ferro
      {0.5, 0.0, 1.0, 0.0},  // spin glass
      {0.8, 1.3, 1.0, 0.5},  // ferro with disorder
      {2.0, 1.0, 1.0, 0.0},  // paramagnet (q = 0 edge)
      {0.1, 1.2, 1.0, 0.0},  // low temperature, large-argument regime
  };
  for (const auto& p : pts) {
    CAPTURE(p.t);
    CAPTURE(p.jtilde0);
    auto sol = solve_rs(p);
    REQUIRE(sol.converged);
    CHECK(std::fabs(fd_gradient_m(p, rule, sol.m, sol.q)) < 1e-6);
    CHECK(std::fabs(fd_gradient_q(p, rule, sol.m, sol.q)) < 1e-6);
  }
}

TEST_CASE("fixed-point consistency across the phase plane") {
  auto rule = gauss_hermite(80);
  for (double t : {0.3, 0.7, 1.1, 1.7}) {
    for (double jt : {0.0, 0.6, 1.2, 1.9}) {
      CAPTURE(t);
      CAPTURE(jt);
      RSParams p{t, jt, 1.0, 0.0};
      auto sol = solve_rs(p);
      REQUIRE(sol.converged);
      CHECK(sol.m >= 0.0);  // +-m pairs are reported canonically
      CHECK(sol.q >= sol.m * sol.m - 1e-9);
      auto back = rs_map(sol.m, sol.q, p, rule);
      CHECK(std::fabs(back.m - sol.m) < 1e-9);
      CHECK(std::fabs(back.q - sol.q) < 1e-9);
    }
  }
}

// Probe scan at jtilde0 = 2J; closer to the ferro/glass boundary the
// replica-symmetric m(T) is genuinely reentrant and the monotone property
// does not hold.
TEST_CASE("magnetization is non-increasing in temperature") {
  double prev = 2.0;
  for (double t = 0.15; t <= 2.01; t += 0.1) {
    RSParams p{t, 2.0, 1.0, 0.0};
    auto sol = solve_rs(p);
    REQUIRE(sol.converged);
    CHECK(sol.m <= prev + 1e-12);
    prev = sol.m;
  }
}

TEST_CASE("doubling the quadrature order leaves solutions unchanged") {
  for (auto [t, jt] : std::vector<std::pair<double, double>>{
           {0.5, 1.4}, {0.3, 0.4}, {0.1, 1.2}, {1.5, 1.8}}) {
    CAPTURE(t);
    CAPTURE(jt);
    RSParams p{t, jt, 1.0, 0.0};
    SolveOptions o80, o160;
    o160.quad_order = 160;
    auto a = solve_rs(p, o80);
    auto b = solve_rs(p, o160);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(std::fabs(a.m - b.m) < 1e-10);
    CHECK(std::fabs(a.q - b.q) < 1e-10);
  }
}

TEST_CASE("iterates stay physical after burn-in") {
  SolveOptions opts;
  long checked = 0;
  opts.observer = [&](RSBranch, long it, double m, double q) {
    if (it <= 10) return;
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    CHECK(q >= m * m - 1e-9);
    ++checked;
  };
  RSParams p{0.4, 1.1, 1.0, 0.0};
  auto sol = solve_rs(p, opts);
  CHECK(sol.converged);
  CHECK(checked > 0);
}

TEST_CASE("non-convergence is reported, never masked") {
  RSParams p{0.5, 1.0, 1.0, 0.0};
  SolveOptions o;
  o.max_iter = 3;
  o.bisection_fallback = false;
  auto sol = solve_rs(p, o);
  CHECK_FALSE(sol.converged);
  CHECK(sol.iterations == 3);
  CHECK(sol.residual > 0.0);
}

TEST_CASE("exactly critical points resolve through the fallback") {
  // matter transition line t = jtilde0 (q-sector inert)
  RSParams pm{1.3, 1.3, 1.0, 0.0};
  auto sm = solve_rs(pm);
  CHECK(sm.converged);
  CHECK(sm.m == 0.0);
  CHECK(sm.q < 1e-6);

  // glass transition line t = J at jtilde0 = 0
  RSParams pq{1.0, 0.0, 1.0, 0.0};
  auto sq = solve_rs(pq);
  CHECK(sq.converged);
  CHECK(sq.m == 0.0);
  CHECK(sq.q < 1e-6);
}

TEST_CASE("photon order parameter") {
  CHECK(photon_order(0.0, 2.0) == 0.0);
  CHECK(photon_order(0.7, 0.0) == 0.0);
  CHECK(photon_order(0.95750402407726876, 1.0) ==
        doctest::Approx(0.91681395612416283).epsilon(1e-14));
}

TEST_CASE("photon-order constant pinned by the exact oracle at N = 20") {
  // jtilde0 = 1 induced purely by the cavity (J0 = 0, 2 lambda^2 = 1). The
  // exact theta minus the bare-mode occupation equals lambda^2 <sbar^2>;
  // at N = 20 that is within finite-size 1/N corrections of lambda^2 m^2,
  // while the rejected alternative constant 2 lambda^2 would sit ~0.46 away.
  const double lambda = std::sqrt(0.5), beta = 2.0;
  auto disorder = zero_disorder(20);
  auto q = quantum_closed_form(disorder, lambda, beta);
  const double matter_part = q.theta - q.bose_occupancy / 20.0;
  const double theta_rs = photon_order(0.95750402407726876, lambda);
  CHECK(std::fabs(matter_part - theta_rs) < 0.02);
  CHECK(std::fabs(matter_part - 2.0 * theta_rs) > 0.4);
}

TEST_CASE("branch selection prefers the lower free energy") {
  RSParams p{0.5, 2.0, 1.0, 0.0};
  auto sol = solve_rs(p);
  CHECK(sol.converged);
  CHECK(sol.m > 0.5);
  CHECK(sol.branch == RSBranch::kFerroStart);
}
