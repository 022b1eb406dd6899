#include "glassydicke/phase_scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "glassydicke/io_util.hpp"

namespace glassydicke {

const char* to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::kParamagnetic: return "PARAMAGNETIC";
    case PhaseLabel::kFerromagnetic: return "FERROMAGNETIC";
    case PhaseLabel::kSpinGlass: return "SPIN_GLASS";
    default: return "UNCLASSIFIED";
  }
}

const char* optical_name(PhaseLabel label) {
  if (label == PhaseLabel::kUnclassified) return "UNCLASSIFIED";
  return label == PhaseLabel::kFerromagnetic ? "SUPERRADIANT" : "SUBRADIANT";
}

PhaseLabel classify(const RSSolution& sol, double tol) {
  if (!sol.converged) return PhaseLabel::kUnclassified;
  if (std::fabs(sol.m) > tol) return PhaseLabel::kFerromagnetic;
  if (sol.q > tol) return PhaseLabel::kSpinGlass;
  return PhaseLabel::kParamagnetic;
}

void GridSpec::validate() const {
  if (a1_count < 2 || a2_count < 2)
    throw std::invalid_argument("GridSpec: axis counts must be >= 2");
  if (!(a1_min < a1_max) || !(a2_min < a2_max))
    throw std::invalid_argument("GridSpec: axis min must be < max");
  if (!(classify_tol > 0.0)) throw std::invalid_argument("GridSpec: classify_tol must be > 0");
}

double GridSpec::a1_value(int i) const {
  return a1_min + i * (a1_max - a1_min) / (a1_count - 1);
}
double GridSpec::a2_value(int k) const {
  return a2_min + k * (a2_max - a2_min) / (a2_count - 1);
}

namespace {

// Shared column driver: axis2 is temperature-like and is swept descending
// with warm starts; `params_at` maps a grid node to solver parameters.
template <typename ParamsAt>
std::vector<PhasePoint> scan_grid(const GridSpec& grid, const SolveOptions& opts, int threads,
                                  bool warm_start, ParamsAt params_at) {
  grid.validate();
  std::vector<PhasePoint> points(static_cast<std::size_t>(grid.a1_count) * grid.a2_count);

  auto run_column = [&](int i) {
    RSSolution prev;
    bool have_prev = false;
    for (int k = grid.a2_count - 1; k >= 0; --k) {
      RSParams p = params_at(grid.a1_value(i), grid.a2_value(k));
      RSSolution sol =
          solve_rs_warm(p, opts, (warm_start && have_prev) ? &prev : nullptr);
      prev = sol;
      have_prev = sol.converged;
      PhasePoint& pt = points[static_cast<std::size_t>(i) * grid.a2_count + k];
      pt.axis1 = grid.a1_value(i);
      pt.axis2 = grid.a2_value(k);
      pt.m = sol.m;
      pt.q = sol.q;
      pt.theta = sol.theta;
      pt.free_energy = sol.free_energy;
      pt.converged = sol.converged;
      pt.iterations = sol.iterations;
      pt.label = classify(sol, grid.classify_tol);
    }
  };

  const int workers = std::clamp(threads, 1, grid.a1_count);
  if (workers <= 1) {
    for (int i = 0; i < grid.a1_count; ++i) run_column(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < grid.a1_count; i = next.fetch_add(1))
          run_column(i);
      });
    for (auto& th : pool) th.join();
  }
  return points;
}

}  // namespace

std::vector<PhasePoint> scan_matter(const GridSpec& grid, const SolveOptions& opts,
                                    int threads, bool warm_start) {
  if (!(grid.j > 0.0)) throw std::invalid_argument("scan_matter: j must be > 0");
  return scan_grid(grid, opts, threads, warm_start, [&](double a1, double a2) {
    RSParams p;
    p.jtilde0 = a1 * grid.j;
    p.t = a2 * grid.j;
    p.j = grid.j;
    p.lambda = grid.lambda;
    return p;
  });
}

std::vector<PhasePoint> scan_optical(const GridSpec& grid, const SolveOptions& opts,
                                     int threads, bool warm_start) {
  if (!(grid.j >= 0.0)) throw std::invalid_argument("scan_optical: j must be >= 0");
  return scan_grid(grid, opts, threads, warm_start, [&](double a1, double a2) {
    RSParams p;
    p.jtilde0 = grid.j0 + 2.0 * a1 * a1;
    p.t = a2;
    p.j = grid.j;
    p.lambda = a1;
    return p;
  });
}

double locate_boundary(const std::function<PhaseLabel(double)>& label_at, PhaseLabel target,
                       double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("locate_boundary: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("locate_boundary: tol must be > 0");
  const bool lo_in = label_at(lo) == target;
  const bool hi_in = label_at(hi) == target;
  if (lo_in == hi_in)
    throw std::invalid_argument(
        "locate_boundary: bracket endpoints classify identically (no boundary inside)");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    ((label_at(mid) == target) == lo_in ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string phase_csv(const std::vector<PhasePoint>& points,
                      const std::vector<std::pair<std::string, std::string>>& config) {
  std::string out;
  for (const auto& [k, v] : config) out += "# " + k + "=" + v + "\n";
  out += "axis1,axis2,m,q,theta,free_energy,label,converged,iterations\n";
  for (const PhasePoint& p : points) {
    out += fmt17(p.axis1);
    out += ',';
    out += fmt17(p.axis2);
    out += ',';
    out += fmt17(p.m);
    out += ',';
    out += fmt17(p.q);
    out += ',';
    out += fmt17(p.theta);
    out += ',';
    out += fmt17(p.free_energy);
    out += ',';
    out += to_string(p.label);
    out += ',';
    out += p.converged ? '1' : '0';
    out += ',';
    out += std::to_string(p.iterations);
    out += '\n';
  }
  return out;
}

}  // namespace glassydicke
