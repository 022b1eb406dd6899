#pragma once

#include <vector>

namespace glassydicke {

// Nodes/weights implementing the unit-variance Gaussian expectation
// Int Dz f(z) = Int exp(-z^2/2)/sqrt(2 pi) f(z) dz ~= sum_k w_k f(z_k).
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Physicists' Gauss-Hermite rule rescaled to the unit-variance measure
// (z = sqrt(2) x, weight w / sqrt(pi)). Nodes found by Newton iteration on
// the orthonormal recurrence, tolerance 1e-15. Orders 2..256 supported; the
// recurrence loses double-precision headroom beyond that.
QuadratureRule gauss_hermite(int order);

// Gauss-Legendre rule on [-1, 1] (internal helper for the localized
// correction integrals of the solver; cached per order).
const QuadratureRule& cached_legendre(int order);

}  // namespace glassydicke
