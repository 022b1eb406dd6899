#pragma once

#include <functional>
#include <string>

#include "glassydicke/quadrature.hpp"

namespace glassydicke {

struct RSParams {
  double t = 1.0;        // temperature
  double jtilde0 = 0.0;  // shifted mean coupling J0 + 2 lambda^2
  double j = 0.0;        // coupling std-dev scale
  double lambda = 0.0;   // only used to report the photon order parameter

  double beta() const { return 1.0 / t; }
};

enum class RSBranch { kFerroStart, kZeroM };
const char* to_string(RSBranch b);

struct RSSolution {
  double m = 0.0;
  double q = 0.0;
  double free_energy = 0.0;
  double theta = 0.0;
  bool converged = false;
  long iterations = 0;
  // Max component update at exit of the damped loop; for solutions recovered
  // by the bisection fallback this is the measured fixed-point residual.
  double residual = 0.0;
  RSBranch branch = RSBranch::kZeroM;
};

struct SolveOptions {
  double tol = 1e-10;
  long max_iter = 100000;
  double damping = 0.5;  // eta in x <- (1-eta) x + eta map(x)
  int quad_order = 80;
  // Damped iteration slows down near continuous phase boundaries (the map
  // derivative approaches 1). When it fails to converge within budget, the
  // fixed point is recovered by nested bisection instead. Disable to expose
  // the raw non-convergence path.
  bool bisection_fallback = true;
  double snap_m = 1e-8;  // |m| below this is reported as exactly 0
  // Test hook: called after every damped iterate.
  std::function<void(RSBranch, long iter, double m, double q)> observer;
};

// Gaussian expectations E[tanh(a+bz)], E[tanh^2(a+bz)], E[log 2cosh(a+bz)]
// for standard normal z and b >= 0.
//
// For small b the rule is applied directly. tanh is analytic only in a strip
// of half-width pi/(2b) around the real axis, so Gauss-Hermite degrades once
// b grows past ~1; there the sign/saturation part is integrated in closed
// form (erf) and the exponentially localized remainder tanh(x) - sign(x) is
// integrated on fixed Gauss-Legendre panels, which is accurate to ~1e-14
// uniformly in b. The rule's order still controls the panel resolution.
struct TanhMoments {
  double tanh_mean = 0.0;
  double tanh_sq_mean = 0.0;
};
TanhMoments gaussian_tanh_moments(double a, double b, const QuadratureRule& rule);
double gaussian_log2cosh(double a, double b, const QuadratureRule& rule);

struct RSMapResult {
  double m = 0.0;
  double q = 0.0;
};

// Self-consistency map: m' = Int Dz tanh(beta(jt m + J sqrt(q) z)),
// q' = Int Dz tanh^2(...). m = 0 is an exact fixed line (odd integrand), so
// the zero-m branch stays pinned without special casing by the caller.
RSMapResult rs_map(double m, double q, const RSParams& p, const QuadratureRule& rule);

// Replica-symmetric free energy per spin.
//
// Averaging the replicated partition sum over Gaussian couplings (mean
// jtilde0/N, variance J^2/N) couples the replicas through overlaps q_uv and
// magnetizations m_u; a Hubbard-Stratonovich field z decouples sites, and
// with the symmetric ansatz q_uv = q, m_u = m the n -> 0 limit gives
//
//   f(m,q) = -(beta J^2/4)(1-q)^2 + (jtilde0/2) m^2
//            - (1/beta) Int Dz log[2 cosh(beta(jtilde0 m + J sqrt(q) z))].
//
// Stationarity reproduces rs_map: df/dm = jtilde0 (m - m') and, after
// integrating the z-term by parts, df/dq = (beta J^2/2)(q' - q). Every
// converged solution is therefore a stationary point of f; the test suite
// checks this by finite differences. The sign and normalization are pinned
// by two limits: f -> -T log 2 for free spins, and the J = 0 mean-field
// closed form f = (jtilde0/2) m^2 - T log[2 cosh(beta jtilde0 m)].
double rs_free_energy(double m, double q, const RSParams& p, const QuadratureRule& rule);

// Photon occupation per site in the ordered phase: theta = lambda^2 m^2.
// The constant is fixed against the exact-oracle identity
// theta = n_B/N + lambda^2 <sbar^2> at small N.
double photon_order(double m, double lambda);

// Damped two-start iteration (ferro start (0.999, 0.999) and zero-m start
// (0, 0.999)); the branch with lower free energy is returned, with m >= 0
// canonically. Non-convergence is reported, never masked, unless the
// bisection fallback recovers the fixed point.
RSSolution solve_rs(const RSParams& p, const SolveOptions& opts = {});

// Same, but seeds the ferro branch from a previous solution when it carries
// m > 0 (scan warm starts); falls back to the cold start on non-convergence.
RSSolution solve_rs_warm(const RSParams& p, const SolveOptions& opts, const RSSolution* warm);

}  // namespace glassydicke
