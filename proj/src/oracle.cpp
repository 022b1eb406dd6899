#include "glassydicke/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "glassydicke/io_util.hpp"

namespace glassydicke {

namespace {

constexpr int kMaxEnumN = 24;

void check_guards(int n, double beta, const char* who) {
  if (n > kMaxEnumN)
    throw std::invalid_argument(std::string(who) + ": N > 24 exceeds enumeration capacity");
  if (n < 1) throw std::invalid_argument(std::string(who) + ": N must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument(std::string(who) + ": beta must be > 0");
}

// Streaming log-sum-exp with weighted accumulators for <sbar^2> and <|sbar|>.
struct Accum {
  double peak = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double sum_s2 = 0.0;
  double sum_am = 0.0;

  void add(double x, double s2, double am) {
    if (x <= peak) {
      double e = std::exp(x - peak);
      sum += e;
      sum_s2 += s2 * e;
      sum_am += am * e;
    } else {
      double r = std::exp(peak - x);
      sum = sum * r + 1.0;
      sum_s2 = sum_s2 * r + s2;
      sum_am = sum_am * r + am;
      peak = x;
    }
  }

  void merge(const Accum& o) {
    if (o.sum == 0.0) return;
    if (o.peak <= peak) {
      double r = std::exp(o.peak - peak);
      sum += o.sum * r;
      sum_s2 += o.sum_s2 * r;
      sum_am += o.sum_am * r;
    } else {
      double r = std::exp(peak - o.peak);
      sum = sum * r + o.sum;
      sum_s2 = sum_s2 * r + o.sum_s2;
      sum_am = sum_am * r + o.sum_am;
      peak = o.peak;
    }
  }

  double log_sum() const { return peak + std::log(sum); }
};

// Runs fn(inner_bits, block_prefix) over a fixed partition of the state
// space and merges block results in index order, so the outcome is bitwise
// identical for every worker count.
template <typename BlockFn>
Accum enumerate_blocks(int n, int threads, BlockFn fn) {
  const int inner_bits = std::min(n, 16);
  const std::uint64_t nblocks = 1ull << (n - inner_bits);
  std::vector<Accum> per(nblocks);
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(std::max(threads, 1), nblocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) per[b] = fn(inner_bits, b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
          per[b] = fn(inner_bits, b);
      });
    for (auto& th : pool) th.join();
  }
  Accum total;
  for (const Accum& a : per) total.merge(a);
  return total;
}

// Gray-code walk over one block: visits every state with single-spin flips,
// keeping the pair sum current via the flipped spin's local field (O(N) per
// state).
template <typename Record>
void gray_walk(int n, int inner_bits, std::uint64_t prefix, const PairTable& pairs,
               Record record) {
  std::vector<std::int8_t> s(n);
  const std::uint64_t init = prefix << inner_bits;
  for (int i = 0; i < n; ++i) s[i] = (init >> i) & 1 ? 1 : -1;
  double pair_sum = 0.0;
  long ssum = 0;
  for (int i = 0; i < n; ++i) {
    double hi = 0.0;
    for (int k = i + 1; k < n; ++k) hi += pairs(i, k) * s[k];
    pair_sum += hi * s[i];
    ssum += s[i];
  }
  record(pair_sum, ssum);
  const std::uint64_t count = 1ull << inner_bits;
  for (std::uint64_t i = 1; i < count; ++i) {
    const int k = std::countr_zero(i);
    double delta = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != k) delta += pairs(k, j) * s[j];
    pair_sum -= 2.0 * s[k] * delta;
    s[k] = static_cast<std::int8_t>(-s[k]);
    ssum += 2 * s[k];
    record(pair_sum, ssum);
  }
}

}  // namespace

ClassicalReport enumerate_classical(const EffectiveModel& model, double beta, int threads) {
  check_guards(model.n, beta, "enumerate_classical");
  const int n = model.n;
  const double inv_n = 1.0 / n;
  Accum acc = enumerate_blocks(n, threads, [&](int inner_bits, std::uint64_t prefix) {
    Accum a;
    gray_walk(n, inner_bits, prefix, model.k, [&](double pair_sum, long ssum) {
      const double sbar = ssum * inv_n;
      a.add(beta * pair_sum, sbar * sbar, std::fabs(sbar));
    });
    return a;
  });
  ClassicalReport r;
  r.beta = beta;
  // exp(-beta E) = exp(beta pair_sum) * exp(-beta offset); the constant and
  // the 1/beta prefactor are restored in log space.
  r.logZcl = -std::log(beta) - beta * model.offset + acc.log_sum();
  r.free_energy_per_spin = -r.logZcl / (beta * n);
  r.mean_s2 = acc.sum_s2 / acc.sum;
  r.mean_abs_m = acc.sum_am / acc.sum;
  return r;
}

QuantumReport quantum_closed_form(const DisorderRealization& disorder, double lambda,
                                  double beta, int threads) {
  check_guards(disorder.n, beta, "quantum_closed_form");
  if (lambda < 0.0)
    throw std::invalid_argument("quantum_closed_form: lambda must be >= 0");
  const int n = disorder.n;
  const double inv_n = 1.0 / n;
  const double g = lambda * lambda * inv_n;  // oscillator shift -g S^2 per state
  Accum acc = enumerate_blocks(n, threads, [&](int inner_bits, std::uint64_t prefix) {
    Accum a;
    gray_walk(n, inner_bits, prefix, disorder.couplings, [&](double pair_sum, long ssum) {
      const double sbar = ssum * inv_n;
      const double shift = g * static_cast<double>(ssum) * static_cast<double>(ssum);
      a.add(beta * (shift + pair_sum), sbar * sbar, std::fabs(sbar));
    });
    return a;
  });
  QuantumReport r;
  r.beta = beta;
  r.bose_occupancy = 1.0 / std::expm1(beta);
  // photon partition function per sector: e^{beta g S^2} / (1 - e^{-beta})
  r.logZq = -std::log(-std::expm1(-beta)) + acc.log_sum();
  r.theta = r.bose_occupancy * inv_n + lambda * lambda * (acc.sum_s2 / acc.sum);
  return r;
}

double verify_mapping(const DisorderRealization& disorder, double lambda, double beta,
                      int threads) {
  const EffectiveModel model = build_effective(disorder, lambda);
  const ClassicalReport cl = enumerate_classical(model, beta, threads);
  const QuantumReport qm = quantum_closed_form(disorder, lambda, beta, threads);
  const double log_ratio =
      qm.logZq + std::log(-std::expm1(-beta)) - cl.logZcl - std::log(beta);
  return std::fabs(std::expm1(log_ratio));
}

std::string to_json(const ClassicalReport& r) {
  JsonWriter w;
  w.put("logZcl", r.logZcl);
  w.put("free_energy_per_spin", r.free_energy_per_spin);
  w.put("mean_s2", r.mean_s2);
  w.put("mean_abs_m", r.mean_abs_m);
  w.put("beta", r.beta);
  return w.str();
}

std::string to_json(const QuantumReport& r) {
  JsonWriter w;
  w.put("logZq", r.logZq);
  w.put("theta", r.theta);
  w.put("bose_occupancy", r.bose_occupancy);
  w.put("beta", r.beta);
  return w.str();
}

}  // namespace glassydicke
