#include "glassydicke/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "glassydicke/io_util.hpp"

namespace glassydicke {

void MCConfig::validate() const {
  if (sweeps < 1) throw std::invalid_argument("MCConfig: sweeps must be >= 1");
  if (burn_in < 0 || burn_in >= sweeps)
    throw std::invalid_argument("MCConfig: burn_in must be in [0, sweeps)");
  if (ladder.empty()) throw std::invalid_argument("MCConfig: ladder must be non-empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0))
      throw std::invalid_argument("MCConfig: ladder temperatures must be > 0");
    if (i > 0 && !(ladder[i] > ladder[i - 1]))
      throw std::invalid_argument("MCConfig: ladder must be strictly ascending");
  }
  if (exchange_interval < 1)
    throw std::invalid_argument("MCConfig: exchange_interval must be >= 1");
  if (replicas_per_t != 2)
    throw std::invalid_argument("MCConfig: replicas_per_t is fixed to 2");
  if (block_count < 8) throw std::invalid_argument("MCConfig: block_count must be >= 8");
  if (sweeps - burn_in < block_count)
    throw std::invalid_argument(
        "MCConfig: fewer measured sweeps than blocks (degenerate block size)");
}

std::vector<double> geometric_ladder(double t_lo, double t_hi, int count) {
  if (count < 1) throw std::invalid_argument("geometric_ladder: count must be >= 1");
  if (!(t_lo > 0.0)) throw std::invalid_argument("geometric_ladder: t_lo must be > 0");
  if (count == 1) return {t_lo};
  if (!(t_hi > t_lo)) throw std::invalid_argument("geometric_ladder: need t_hi > t_lo");
  std::vector<double> out(count);
  const double ratio = std::pow(t_hi / t_lo, 1.0 / (count - 1));
  double t = t_lo;
  for (int i = 0; i < count; ++i) {
    out[i] = t;
    t *= ratio;
  }
  out.back() = t_hi;
  return out;
}

Blocked blocking(const std::vector<double>& series, int block_count) {
  if (block_count < 2) throw std::invalid_argument("blocking: block_count must be >= 2");
  const std::size_t len = series.size() / block_count;
  if (len < 1)
    throw std::invalid_argument("blocking: series shorter than block count");
  std::vector<double> bmeans(block_count);
  for (int b = 0; b < block_count; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += series[b * len + i];
    bmeans[b] = s / len;
  }
  Blocked out;
  for (double v : bmeans) out.mean += v;
  out.mean /= block_count;
  double var = 0.0;
  for (double v : bmeans) var += (v - out.mean) * (v - out.mean);
  var /= (block_count - 1);
  out.se = std::sqrt(var / block_count);
  return out;
}

namespace {

// Dense symmetric coupling matrix with zero diagonal; row access makes the
// local-field update a contiguous pass.
std::vector<double> dense_couplings(const EffectiveModel& model) {
  const int n = model.n;
  std::vector<double> k(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      k[static_cast<std::size_t>(i) * n + j] = model.k(i, j);
      k[static_cast<std::size_t>(j) * n + i] = model.k(i, j);
    }
  return k;
}

// One replica at one rung: spins, incrementally maintained local fields and
// energy. The RNG stream stays attached to the rung; swaps exchange state only.
class Walker {
 public:
  Walker(const std::vector<double>& kdense, int n, double offset, std::uint64_t stream_key)
      : kdense_(&kdense), n_(n), offset_(offset), eng_(stream_key), order_(n) {
    spins_.s.resize(n);
    for (int i = 0; i < n; ++i) spins_.s[i] = (eng_.next_u64() & 1) ? 1 : -1;
    std::iota(order_.begin(), order_.end(), 0);
    rebuild();
  }

  long sweep(double beta) {
    eng_.shuffle(order_);
    long accepted = 0;
    for (int idx : order_) {
      const double de = 2.0 * spins_.s[idx] * h_[idx];
      bool accept = de <= 0.0;
      if (!accept) accept = eng_.next_u01() < std::exp(-beta * de);
      if (accept) {
        flip(idx, de);
        ++accepted;
      }
    }
    return accepted;
  }

  double energy() const { return energy_; }
  const SpinConfiguration& spins() const { return spins_; }

  double magnetization() const {
    long s = 0;
    for (auto v : spins_.s) s += v;
    return static_cast<double>(s) / n_;
  }

  // drift guard: distance between incremental and recomputed fields
  double field_drift() const {
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double* row = &(*kdense_)[static_cast<std::size_t>(i) * n_];
      double hi = 0.0;
      for (int j = 0; j < n_; ++j) hi += row[j] * spins_.s[j];
      worst = std::max(worst, std::fabs(hi - h_[i]));
    }
    return worst;
  }

  void rebuild() {
    h_.assign(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
      const double* row = &(*kdense_)[static_cast<std::size_t>(i) * n_];
      double hi = 0.0;
      for (int j = 0; j < n_; ++j) hi += row[j] * spins_.s[j];
      h_[i] = hi;
    }
    double pair_sum = 0.0;
    for (int i = 0; i < n_; ++i) pair_sum += h_[i] * spins_.s[i];
    energy_ = -0.5 * pair_sum + offset_;
  }

  void swap_state_with(Walker& other) {
    spins_.s.swap(other.spins_.s);
    h_.swap(other.h_);
    std::swap(energy_, other.energy_);
  }

  rng::Engine& engine() { return eng_; }

 private:
  void flip(int idx, double de) {
    spins_.s[idx] = static_cast<std::int8_t>(-spins_.s[idx]);
    const double two_s = 2.0 * spins_.s[idx];
    const double* row = &(*kdense_)[static_cast<std::size_t>(idx) * n_];
    for (int j = 0; j < n_; ++j) h_[j] += two_s * row[j];  // zero diagonal keeps h_[idx] intact
    energy_ += de;
  }

  const std::vector<double>* kdense_;
  int n_;
  double offset_;
  rng::Engine eng_;
  std::vector<int> order_;
  SpinConfiguration spins_;
  std::vector<double> h_;
  double energy_ = 0.0;
};

constexpr std::uint64_t kSwapStream = 0x73776170;      // "swap"
constexpr std::uint64_t kDisorderStream = 0x64697364;  // "disd"
constexpr std::uint64_t kRunStream = 0x6d637275;       // "mcru"
constexpr long kDriftCheckInterval = 1000;

}  // namespace

long metropolis_sweep(SpinConfiguration& state, const EffectiveModel& model, double beta,
                      rng::Engine& rng) {
  if (state.n() != model.n)
    throw std::invalid_argument("metropolis_sweep: spin count does not match model");
  if (beta < 0.0) throw std::invalid_argument("metropolis_sweep: beta must be >= 0");
  const int n = model.n;
  std::vector<double> h(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double hi = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) hi += model.k(i, j) * state.s[j];
    h[i] = hi;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  long accepted = 0;
  for (int idx : order) {
    const double de = 2.0 * state.s[idx] * h[idx];
    bool accept = de <= 0.0;
    if (!accept) accept = rng.next_u01() < std::exp(-beta * de);
    if (accept) {
      state.s[idx] = static_cast<std::int8_t>(-state.s[idx]);
      const double two_s = 2.0 * state.s[idx];
      for (int j = 0; j < n; ++j)
        if (j != idx) h[j] += two_s * model.k(idx, j);
      ++accepted;
    }
  }
  return accepted;
}

MCEstimates run_parallel_tempering(const EffectiveModel& model, const MCConfig& config) {
  config.validate();
  const int n = model.n;
  const int rungs = static_cast<int>(config.ladder.size());
  const int lanes = config.replicas_per_t;
  const std::vector<double> kdense = dense_couplings(model);
  std::vector<double> betas(rungs);
  for (int r = 0; r < rungs; ++r) betas[r] = 1.0 / config.ladder[r];

  std::vector<std::vector<Walker>> walkers(lanes);
  for (int l = 0; l < lanes; ++l) {
    walkers[l].reserve(rungs);
    for (int r = 0; r < rungs; ++r)
      walkers[l].emplace_back(kdense, n, model.offset,
                              rng::derive(config.seed, static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(l)));
  }
  std::vector<rng::Engine> swap_eng;
  for (int l = 0; l < lanes; ++l)
    swap_eng.emplace_back(rng::derive(config.seed, kSwapStream, static_cast<std::uint64_t>(l)));

  const long measured = config.sweeps - config.burn_in;
  std::vector<std::vector<double>> absm(rungs), m2(rungs), qov(rungs), aqov(rungs);
  for (int r = 0; r < rungs; ++r) {
    absm[r].reserve(measured);
    m2[r].reserve(measured);
    qov[r].reserve(measured);
    aqov[r].reserve(measured);
  }
  std::vector<long> swap_attempts(std::max(rungs - 1, 0), 0);
  std::vector<long> swap_accepts(std::max(rungs - 1, 0), 0);

  long exchange_round = 0;
  for (long sweep = 1; sweep <= config.sweeps; ++sweep) {
    for (int l = 0; l < lanes; ++l)
      for (int r = 0; r < rungs; ++r) walkers[l][r].sweep(betas[r]);

    if (sweep % kDriftCheckInterval == 0) {
      for (int l = 0; l < lanes; ++l)
        for (int r = 0; r < rungs; ++r) {
          if (walkers[l][r].field_drift() > 1e-9)
            throw std::runtime_error("run_parallel_tempering: local-field drift exceeded 1e-9");
          walkers[l][r].rebuild();
        }
    }

    if (rungs > 1 && sweep % config.exchange_interval == 0) {
      const int parity = static_cast<int>(exchange_round++ & 1);
      for (int l = 0; l < lanes; ++l)
        for (int r = parity; r + 1 < rungs; r += 2) {
          const double arg =
              (betas[r] - betas[r + 1]) * (walkers[l][r].energy() - walkers[l][r + 1].energy());
          ++swap_attempts[r];
          bool accept = arg >= 0.0;
          if (!accept) accept = swap_eng[l].next_u01() < std::exp(arg);
          if (accept) {
            walkers[l][r].swap_state_with(walkers[l][r + 1]);
            ++swap_accepts[r];
          }
        }
    }

    if (sweep > config.burn_in) {
      for (int r = 0; r < rungs; ++r) {
        const double ma = walkers[0][r].magnetization();
        const double mb = walkers[1][r].magnetization();
        absm[r].push_back(0.5 * (std::fabs(ma) + std::fabs(mb)));
        m2[r].push_back(0.5 * (ma * ma + mb * mb));
        long dot = 0;
        const auto& sa = walkers[0][r].spins().s;
        const auto& sb = walkers[1][r].spins().s;
        for (int i = 0; i < n; ++i) dot += sa[i] * sb[i];
        const double q = static_cast<double>(dot) / n;
        qov[r].push_back(q);
        aqov[r].push_back(std::fabs(q));
      }
    }
  }

  MCEstimates out;
  out.measured_sweeps = measured;
  out.rungs.resize(rungs);
  const double lam_sq = model.lambda_sq();
  for (int r = 0; r < rungs; ++r) {
    RungEstimates& e = out.rungs[r];
    e.t = config.ladder[r];
    e.beta = betas[r];
    Blocked a = blocking(absm[r], config.block_count);
    Blocked b = blocking(m2[r], config.block_count);
    Blocked c = blocking(qov[r], config.block_count);
    Blocked d = blocking(aqov[r], config.block_count);
    e.mean_abs_m = a.mean;
    e.se_abs_m = a.se;
    e.mean_m2 = b.mean;
    e.se_m2 = b.se;
    e.q_overlap = c.mean;
    e.se_q = c.se;
    e.abs_q_overlap = d.mean;
    e.se_abs_q = d.se;
    e.theta_hat = 1.0 / std::expm1(e.beta) / n + lam_sq * b.mean;
    e.se_theta = lam_sq * b.se;
    if (r + 1 < rungs && swap_attempts[r] > 0)
      e.swap_rate = static_cast<double>(swap_accepts[r]) / swap_attempts[r];
    else
      e.swap_rate = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

DisorderAverage disorder_average(const ModelParams& params, int realizations,
                                 const MCConfig& config, int threads) {
  params.validate();
  config.validate();
  if (realizations < 1)
    throw std::invalid_argument("disorder_average: realizations must be >= 1");

  std::vector<MCEstimates> runs(realizations);
  std::vector<std::uint64_t> seeds(realizations);
  for (int r = 0; r < realizations; ++r)
    seeds[r] = rng::derive(config.seed, kDisorderStream, static_cast<std::uint64_t>(r));

  auto run_one = [&](int r) {
    DisorderRealization d = sample_disorder(params.n, params.j0, params.j, seeds[r]);
    EffectiveModel model = build_effective(d, params.lambda);
    MCConfig c = config;
    c.seed = rng::derive(config.seed, kRunStream, static_cast<std::uint64_t>(r));
    runs[r] = run_parallel_tempering(model, c);
  };

  const int workers = std::clamp(threads, 1, realizations);
  if (workers <= 1) {
    for (int r = 0; r < realizations; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < realizations; r = next.fetch_add(1)) run_one(r);
      });
    for (auto& th : pool) th.join();
  }

  DisorderAverage avg;
  avg.realizations = realizations;
  avg.realization_seeds = seeds;
  const int rungs = static_cast<int>(config.ladder.size());
  avg.rungs.resize(rungs);
  for (int r = 0; r < rungs; ++r) {
    RungEstimates& e = avg.rungs[r];
    e.t = config.ladder[r];
    e.beta = 1.0 / e.t;
    auto combine = [&](auto pick, double* mean, double* se, double single_se) {
      double m = 0.0;
      for (int k = 0; k < realizations; ++k) m += pick(runs[k].rungs[r]);
      m /= realizations;
      *mean = m;
      if (realizations == 1) {
        *se = single_se;
        return;
      }
      double var = 0.0;
      for (int k = 0; k < realizations; ++k) {
        const double d = pick(runs[k].rungs[r]) - m;
        var += d * d;
      }
      var /= (realizations - 1);
      *se = std::sqrt(var / realizations);
    };
    combine([](const RungEstimates& x) { return x.mean_abs_m; }, &e.mean_abs_m, &e.se_abs_m,
            runs[0].rungs[r].se_abs_m);
    combine([](const RungEstimates& x) { return x.mean_m2; }, &e.mean_m2, &e.se_m2,
            runs[0].rungs[r].se_m2);
    combine([](const RungEstimates& x) { return x.q_overlap; }, &e.q_overlap, &e.se_q,
            runs[0].rungs[r].se_q);
    combine([](const RungEstimates& x) { return x.abs_q_overlap; }, &e.abs_q_overlap,
            &e.se_abs_q, runs[0].rungs[r].se_abs_q);
    combine([](const RungEstimates& x) { return x.theta_hat; }, &e.theta_hat, &e.se_theta,
            runs[0].rungs[r].se_theta);
    double sw = 0.0;
    for (int k = 0; k < realizations; ++k) sw += runs[k].rungs[r].swap_rate;
    e.swap_rate = sw / realizations;
  }
  return avg;
}

namespace {

std::string rung_csv_rows(const std::vector<RungEstimates>& rungs) {
  std::string out =
      "T,mean_abs_m,stderr,mean_m2,stderr,q_overlap,stderr,abs_q_overlap,stderr,"
      "theta_hat,stderr,swap_rate\n";
  for (const RungEstimates& e : rungs) {
    out += fmt17(e.t);
    for (double v : {e.mean_abs_m, e.se_abs_m, e.mean_m2, e.se_m2, e.q_overlap, e.se_q,
                     e.abs_q_overlap, e.se_abs_q, e.theta_hat, e.se_theta, e.swap_rate}) {
      out += ',';
      out += fmt17(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string mc_csv(const MCEstimates& est) { return rung_csv_rows(est.rungs); }
std::string mc_csv(const DisorderAverage& avg) { return rung_csv_rows(avg.rungs); }

}  // namespace glassydicke
