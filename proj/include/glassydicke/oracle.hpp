#pragma once

#include <string>

#include "glassydicke/model.hpp"

namespace glassydicke {

// Exact small-N computations (2^N enumeration, N <= 24). Two deliberately
// independent code paths: the classical one enumerates the photon-eliminated
// effective model, the quantum one sums displaced-oscillator sectors of the
// full model at zero qubit gap. verify_mapping ties them together.

struct ClassicalReport {
  double logZcl = 0.0;  // log[(1/beta) sum_s exp(-beta E(s))]
  double free_energy_per_spin = 0.0;
  double mean_s2 = 0.0;    // <sbar^2>
  double mean_abs_m = 0.0; // <|sbar|>
  double beta = 0.0;
};

struct QuantumReport {
  double logZq = 0.0;
  double theta = 0.0;           // <a'a>/N
  double bose_occupancy = 0.0;  // n_B = 1/(e^beta - 1)
  double beta = 0.0;
};

ClassicalReport enumerate_classical(const EffectiveModel& model, double beta, int threads = 1);

// For every sigma^X eigenconfiguration s with S = sum_i s_i the photon mode
// is a displaced oscillator whose spectrum is shifted by -lambda^2 S^2 / N,
// so Zq = (1 - e^{-beta})^{-1} sum_s exp[beta(lambda^2 S^2/N + sum_{i<j} J_ij s_i s_j)]
// and theta = n_B/N + lambda^2 <sbar^2> under the same weights.
QuantumReport quantum_closed_form(const DisorderRealization& disorder, double lambda,
                                  double beta, int threads = 1);

// |Zq (1 - e^{-beta}) / (beta Zcl) - 1|; exactly zero in exact arithmetic
// because the spin weights of the two paths coincide.
double verify_mapping(const DisorderRealization& disorder, double lambda, double beta,
                      int threads = 1);

// Single-line JSON records with fields named exactly as above.
std::string to_json(const ClassicalReport& r);
std::string to_json(const QuantumReport& r);

}  // namespace glassydicke
