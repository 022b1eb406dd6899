#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glassydicke/model.hpp"
#include "glassydicke/rng.hpp"

namespace glassydicke {

struct MCConfig {
  long sweeps = 20000;
  long burn_in = 4000;
  std::vector<double> ladder;  // strictly ascending temperatures
  long exchange_interval = 5;  // sweeps between swap attempts
  std::uint64_t seed = 1;
  int replicas_per_t = 2;  // two independent lanes define the overlap
  int block_count = 32;

  void validate() const;
};

// Geometric temperature ladder, near-uniform swap acceptance for mean-field
// models. count == 1 gives {t_lo} (plain Metropolis).
std::vector<double> geometric_ladder(double t_lo, double t_hi, int count);

struct RungEstimates {
  double t = 0.0;
  double beta = 0.0;
  double mean_abs_m = 0.0, se_abs_m = 0.0;
  double mean_m2 = 0.0, se_m2 = 0.0;
  double q_overlap = 0.0, se_q = 0.0;
  double abs_q_overlap = 0.0, se_abs_q = 0.0;
  double theta_hat = 0.0, se_theta = 0.0;  // n_B(beta)/N + lambda^2 <m^2>
  double swap_rate = 0.0;  // acceptance of swaps with the rung above; NaN at the top
};

struct MCEstimates {
  std::vector<RungEstimates> rungs;
  long measured_sweeps = 0;
};

// One full sweep of randomized-order single-spin Metropolis proposals;
// returns the number of accepted flips. Standalone entry point for the
// sampler contract; the tempering runner keeps local fields incrementally
// instead of rebuilding them per sweep.
long metropolis_sweep(SpinConfiguration& state, const EffectiveModel& model, double beta,
                      rng::Engine& rng);

MCEstimates run_parallel_tempering(const EffectiveModel& model, const MCConfig& config);

struct DisorderAverage {
  std::vector<RungEstimates> rungs;  // between-realization standard errors
  int realizations = 0;
  std::vector<std::uint64_t> realization_seeds;
};

// Quenched average: R realizations with per-realization derived seeds, each
// run through run_parallel_tempering. Deterministic for any worker count.
DisorderAverage disorder_average(const ModelParams& params, int realizations,
                                 const MCConfig& config, int threads = 1);

// Blocking error analysis: mean and standard error from block_count block
// means over the series.
struct Blocked {
  double mean = 0.0;
  double se = 0.0;
};
Blocked blocking(const std::vector<double>& series, int block_count);

std::string mc_csv(const MCEstimates& est);
std::string mc_csv(const DisorderAverage& avg);

}  // namespace glassydicke
