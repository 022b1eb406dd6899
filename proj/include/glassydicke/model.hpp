#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace glassydicke {

// Model parameters. Couplings J_ij are Gaussian with mean J0/N and standard
// deviation J/sqrt(N); lambda is the qubit-cavity coupling in units of the
// photon energy. The qubit gap epsilon is retained as a field but is zero in
// every implemented computation (degenerate two-level systems).
struct ModelParams {
  int n = 1;
  double lambda = 0.0;
  double j0 = 0.0;
  double j = 0.0;
  double t = 1.0;
  double epsilon = 0.0;

  double beta() const { return 1.0 / t; }
  void validate() const;  // throws std::invalid_argument naming the field
};

// Strictly upper-triangular pair table with symmetric access.
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(int n) : n_(n), v_(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0) {}

  int n() const { return n_; }
  std::size_t pair_count() const { return v_.size(); }

  // i != j, any order
  double operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    return v_[index(i, j)];
  }
  double& at(int i, int j) {  // requires i < j
    return v_[index(i, j)];
  }

  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i + 1) / 2 +
           (j - i - 1);
  }
  int n_ = 0;
  std::vector<double> v_;
};

// One quenched sample of couplings {J_ij}, 0-based strictly upper triangular.
// Regenerating with the same seed is bit-for-bit reproducible; each pair is
// drawn from its own counter-based stream keyed by (seed, i, j), so the
// values do not depend on generation order.
struct DisorderRealization {
  int n = 0;
  PairTable couplings;
  std::uint64_t seed = 0;
  double j0 = 0.0;  // provenance
  double j = 0.0;
};

// Photon-eliminated classical model: K_ij = J_ij + 2 lambda^2 / N, plus the
// constant energy offset -lambda^2 and the shifted mean coupling
// jtilde0 = J0 + 2 lambda^2.
struct EffectiveModel {
  int n = 0;
  PairTable k;
  double offset = 0.0;
  double jtilde0 = 0.0;

  double lambda_sq() const { return -offset; }
};

struct SpinConfiguration {
  std::vector<std::int8_t> s;  // entries in {-1,+1}

  int n() const { return static_cast<int>(s.size()); }
};

// The keyed per-pair draw used by sample_disorder (exposed for order
// independence checks).
double pair_coupling(int n, double j0, double j, std::uint64_t seed, int i, int jdx);

DisorderRealization sample_disorder(int n, double j0, double j, std::uint64_t seed);

EffectiveModel build_effective(const DisorderRealization& disorder, double lambda);

// E(s) = -sum_{i<j} K_ij s_i s_j - lambda^2, so exp(-beta E) is the Boltzmann
// weight of the photon-eliminated partition function.
double effective_energy(const EffectiveModel& model, const SpinConfiguration& spins);

double magnetization(const SpinConfiguration& spins);

// Text serialization: header lines N=, J0=, J=, seed=, then one line
// "i j J_ij" per pair (1-based, i<j) with 17 significant digits.
void write_disorder(std::ostream& out, const DisorderRealization& d);
DisorderRealization read_disorder(std::istream& in);

}  // namespace glassydicke
