#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "glassydicke/rs_solver.hpp"

namespace glassydicke {

enum class PhaseLabel { kParamagnetic, kFerromagnetic, kSpinGlass, kUnclassified };

const char* to_string(PhaseLabel label);    // PARAMAGNETIC | FERROMAGNETIC | SPIN_GLASS | UNCLASSIFIED
const char* optical_name(PhaseLabel label); // SUBRADIANT | SUPERRADIANT (superradiant iff ferromagnetic)

// |m| > tol -> ferromagnetic; else q > tol -> spin glass; else paramagnetic.
// Unconverged solutions are never guessed at.
PhaseLabel classify(const RSSolution& sol, double tol = 1e-6);

struct GridSpec {
  std::string axis1_name;
  std::string axis2_name;
  double a1_min = 0.0, a1_max = 1.0;
  int a1_count = 2;
  double a2_min = 0.0, a2_max = 1.0;
  int a2_count = 2;
  double j = 1.0;       // coupling scale (> 0 for matter scans; sets the units)
  double j0 = 0.0;      // optical scans only
  double lambda = 0.0;  // matter scans: fixed lambda for theta reporting
  double classify_tol = 1e-6;

  void validate() const;
  double a1_value(int i) const;
  double a2_value(int k) const;
};

struct PhasePoint {
  double axis1 = 0.0;
  double axis2 = 0.0;
  double m = 0.0, q = 0.0, theta = 0.0, free_energy = 0.0;
  PhaseLabel label = PhaseLabel::kUnclassified;
  bool converged = false;
  long iterations = 0;
};

// Matter phase diagram over (jtilde0/J, T/J). Each axis1 column is solved at
// descending T with warm starts from the previous node; rows are emitted in
// ascending axis order.
std::vector<PhasePoint> scan_matter(const GridSpec& grid, const SolveOptions& opts = {},
                                    int threads = 1, bool warm_start = true);

// Optical phase diagram over (lambda, T) at fixed (J0, J); per node
// jtilde0 = J0 + 2 lambda^2, then the identical solve path as scan_matter.
std::vector<PhasePoint> scan_optical(const GridSpec& grid, const SolveOptions& opts = {},
                                     int threads = 1, bool warm_start = true);

// Bisection on the classification predicate label_at(x) == target over
// [lo, hi]; endpoints must classify differently. Returns the midpoint of the
// final bracket of width <= tol.
double locate_boundary(const std::function<PhaseLabel(double)>& label_at, PhaseLabel target,
                       double lo, double hi, double tol = 1e-4);

// CSV with mandatory header row; `config` lines are echoed as '# key=value'.
std::string phase_csv(const std::vector<PhasePoint>& points,
                      const std::vector<std::pair<std::string, std::string>>& config = {});

}  // namespace glassydicke
