#include "glassydicke/model.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "glassydicke/rng.hpp"

namespace glassydicke {

void ModelParams::validate() const {
  if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("ModelParams: t must be > 0");
  if (j < 0.0) throw std::invalid_argument("ModelParams: j must be >= 0");
  if (lambda < 0.0) throw std::invalid_argument("ModelParams: lambda must be >= 0");
  if (epsilon != 0.0)
    throw std::invalid_argument("ModelParams: epsilon must be 0 (degenerate qubits)");
}

double pair_coupling(int n, double j0, double j, std::uint64_t seed, int i, int jdx) {
  std::uint64_t key = rng::derive(seed, static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(jdx));
  return j0 / n + j / std::sqrt(static_cast<double>(n)) * rng::keyed_normal(key);
}

DisorderRealization sample_disorder(int n, double j0, double j, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_disorder: n must be >= 1");
  if (j < 0.0) throw std::invalid_argument("sample_disorder: j must be >= 0");
  DisorderRealization d;
  d.n = n;
  d.couplings = PairTable(n);
  d.seed = seed;
  d.j0 = j0;
  d.j = j;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) d.couplings.at(i, k) = pair_coupling(n, j0, j, seed, i, k);
  return d;
}

EffectiveModel build_effective(const DisorderRealization& disorder, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("build_effective: lambda must be >= 0");
  EffectiveModel m;
  m.n = disorder.n;
  m.k = disorder.couplings;
  const double shift = 2.0 * lambda * lambda / disorder.n;
  for (double& v : m.k.data()) v += shift;
  m.offset = -lambda * lambda;
  m.jtilde0 = disorder.j0 + 2.0 * lambda * lambda;
  return m;
}

double effective_energy(const EffectiveModel& model, const SpinConfiguration& spins) {
  if (spins.n() != model.n)
    throw std::invalid_argument("effective_energy: spin count does not match model");
  double pair_sum = 0.0;
  for (int i = 0; i < model.n; ++i) {
    double hi = 0.0;
    for (int k = i + 1; k < model.n; ++k) hi += model.k(i, k) * spins.s[k];
    pair_sum += hi * spins.s[i];
  }
  return -pair_sum + model.offset;
}

double magnetization(const SpinConfiguration& spins) {
  long sum = 0;
  for (std::int8_t v : spins.s) sum += v;
  return static_cast<double>(sum) / spins.s.size();
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string expect_key(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("disorder file: truncated header");
  if (line.rfind(key + "=", 0) != 0)
    throw std::runtime_error("disorder file: expected '" + key + "=' line, got '" + line + "'");
  return line.substr(key.size() + 1);
}

}  // namespace

void write_disorder(std::ostream& out, const DisorderRealization& d) {
  out << "N=" << d.n << '\n';
  out << "J0=" << fmt17(d.j0) << '\n';
  out << "J=" << fmt17(d.j) << '\n';
  out << "seed=" << d.seed << '\n';
  for (int i = 0; i < d.n; ++i)
    for (int k = i + 1; k < d.n; ++k)
      out << (i + 1) << ' ' << (k + 1) << ' ' << fmt17(d.couplings(i, k)) << '\n';
}

DisorderRealization read_disorder(std::istream& in) {
  DisorderRealization d;
  d.n = std::stoi(expect_key(in, "N"));
  if (d.n < 1) throw std::runtime_error("disorder file: N must be >= 1");
  d.j0 = std::stod(expect_key(in, "J0"));
  d.j = std::stod(expect_key(in, "J"));
  d.seed = std::stoull(expect_key(in, "seed"));
  d.couplings = PairTable(d.n);
  std::size_t expected = d.couplings.pair_count();
  std::string line;
  for (std::size_t row = 0; row < expected; ++row) {
    if (!std::getline(in, line))
      throw std::runtime_error("disorder file: expected " + std::to_string(expected) +
                               " coupling lines");
    std::istringstream ls(line);
    int i = 0, k = 0;
    double v = 0.0;
    if (!(ls >> i >> k >> v) || i < 1 || k <= i || k > d.n)
      throw std::runtime_error("disorder file: malformed coupling line '" + line + "'");
    d.couplings.at(i - 1, k - 1) = v;
  }
  return d;
}

}  // namespace glassydicke
