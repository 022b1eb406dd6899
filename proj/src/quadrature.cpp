#include "glassydicke/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace glassydicke {

QuadratureRule gauss_hermite(int order) {
  if (order < 2) throw std::invalid_argument("gauss_hermite: order must be >= 2");
  if (order > 256) throw std::invalid_argument("gauss_hermite: order > 256 unsupported");
  const int n = order;
  const double pim4 = 0.75112554446494248;  // pi^{-1/4}
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  double z = 0.0, pp = 0.0;
  for (int i = 0; i < half; ++i) {
    // initial guesses, largest root first
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * x[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * x[1];
    else
      z = 2.0 * z - x[i - 2];
    double best_step = 1e300;
    for (int its = 0; its < 100; ++its) {
      // orthonormal Hermite recurrence; p1 = H~_n(z), p2 = H~_{n-1}(z)
      double p1 = pim4, p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / k) * p2 - std::sqrt((k - 1.0) / k) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double z1 = z;
      z = z1 - p1 / pp;
      double step = std::fabs(z - z1);
      if (step <= 1e-15 * std::max(1.0, std::fabs(z))) break;
      if (step >= best_step && its > 3) break;  // stalled at roundoff
      best_step = std::min(best_step, step);
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  // ordering check guards against initial-guess failures at high order
  for (int i = 0; i + 1 < half; ++i)
    if (!(x[i] > x[i + 1]) || !(w[i] > 0.0))
      throw std::runtime_error("gauss_hermite: node iteration failed");

  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double sqrt2 = std::sqrt(2.0);
  const double sqrtpi = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = sqrt2 * x[i];
    rule.weights[i] = w[i] / sqrtpi;
  }
  return rule;
}

namespace {

QuadratureRule make_legendre(int n) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int its = 0; its < 100; ++its) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k + 1.0) * z * p2 - k * p3) / (k + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace

const QuadratureRule& cached_legendre(int order) {
  static std::mutex mu;
  static std::unordered_map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_legendre(order)).first;
  return it->second;
}

}  // namespace glassydicke
