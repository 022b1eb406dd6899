#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "glassydicke/model.hpp"
#include "glassydicke/rng.hpp"

using namespace glassydicke;

TEST_CASE("zero-variance disorder is exactly J0/N") {
  auto d = sample_disorder(4, 1.0, 0.0, 123);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(d.couplings(i, j) == 0.25);
}

TEST_CASE("disorder is deterministic per seed and keyed per pair") {
  auto a = sample_disorder(2, 0.0, 1.0, 42);
  auto b = sample_disorder(2, 0.0, 1.0, 42);
  CHECK(a.couplings(0, 1) == b.couplings(0, 1));

  // regenerating any single pair from its key reproduces the stored value
  auto d = sample_disorder(13, 0.7, 0.4, 99);
  for (int i = 0; i < 13; ++i)
    for (int j = i + 1; j < 13; ++j)
      CHECK(d.couplings(i, j) == pair_coupling(13, 0.7, 0.4, 99, i, j));

  auto c = sample_disorder(2, 0.0, 1.0, 43);
  CHECK(a.couplings(0, 1) != c.couplings(0, 1));
}

TEST_CASE("disorder moments match N J0/N and J^2/N") {
  const int n = 1000;
  auto d = sample_disorder(n, 2.0, 1.0, 7);
  const double count = d.couplings.pair_count();
  double mean = 0.0;
  for (double v : d.couplings.data()) mean += n * v;
  mean /= count;
  // sd of N*J_ij is sqrt(N)*J
  const double se_mean = std::sqrt(static_cast<double>(n)) / std::sqrt(count);
  CHECK(std::fabs(mean - 2.0) < 5.0 * se_mean);

  const double scaled_mean = 2.0 / std::sqrt(static_cast<double>(n));
  double var = 0.0;
  for (double v : d.couplings.data()) {
    const double x = std::sqrt(static_cast<double>(n)) * v - scaled_mean;
    var += x * x;
  }
  var /= (count - 1);
  const double se_var = std::sqrt(2.0 / (count - 1));
  CHECK(std::fabs(var - 1.0) < 5.0 * se_var);
}

TEST_CASE("disorder rejects bad arguments") {
  CHECK_THROWS_AS(sample_disorder(0, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_disorder(-3, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_disorder(4, 0.0, -1.0, 1), std::invalid_argument);
  ModelParams p;
  p.t = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.epsilon = 0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("effective model carries the 2 lambda^2 / N shift") {
  DisorderRealization zeros;
  zeros.n = 4;
  zeros.couplings = PairTable(4);
  zeros.j0 = 0.0;
  auto m = build_effective(zeros, 1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(m.k(i, j) == 0.5);
  CHECK(m.jtilde0 == 2.0);
  CHECK(m.offset == -1.0);

  auto d = sample_disorder(6, 1.0, 0.8, 5);
  auto id = build_effective(d, 0.0);
  CHECK(id.offset == 0.0);
  CHECK(id.jtilde0 == 1.0);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) CHECK(id.k(i, j) == d.couplings(i, j));

  auto half = build_effective(d, 0.5);
  CHECK(half.jtilde0 == 1.5);
  const double shift = 2.0 * 0.25 / 6.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      CHECK(std::fabs((half.k(i, j) - d.couplings(i, j)) - shift) < 1e-16);
}

TEST_CASE("effective energy closed forms and flip symmetry") {
  // uniform couplings k, all spins up: E = -k N(N-1)/2 - lambda^2
  DisorderRealization d;
  d.n = 5;
  d.couplings = PairTable(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) d.couplings.at(i, j) = 0.3;
  auto m = build_effective(d, 0.0);
  SpinConfiguration up{std::vector<std::int8_t>(5, 1)};
  CHECK(effective_energy(m, up) == doctest::Approx(-0.3 * 10).epsilon(1e-14));

  DisorderRealization single;
  single.n = 1;
  single.couplings = PairTable(1);
  auto m1 = build_effective(single, 2.0);
  SpinConfiguration one{std::vector<std::int8_t>(1, 1)};
  CHECK(effective_energy(m1, one) == -4.0);

  auto rd = sample_disorder(9, 0.5, 1.0, 11);
  auto rm = build_effective(rd, 0.7);
  rng::Engine eng(3);
  for (int rep = 0; rep < 20; ++rep) {
    SpinConfiguration s;
    s.s.resize(9);
    for (auto& v : s.s) v = (eng.next_u64() & 1) ? 1 : -1;
    SpinConfiguration flipped = s;
    for (auto& v : flipped.s) v = -v;
    CHECK(effective_energy(rm, s) == effective_energy(rm, flipped));
  }

  SpinConfiguration wrong{std::vector<std::int8_t>(3, 1)};
  CHECK_THROWS_AS(effective_energy(rm, wrong), std::invalid_argument);
}

TEST_CASE("magnetization") {
  SpinConfiguration all{std::vector<std::int8_t>(6, 1)};
  CHECK(magnetization(all) == 1.0);
  SpinConfiguration alt{{1, -1, 1, -1}};
  CHECK(magnetization(alt) == 0.0);
  SpinConfiguration s{{1, 1, -1}};
  SpinConfiguration ms{{-1, -1, 1}};
  CHECK(magnetization(s) == -magnetization(ms));
}

TEST_CASE("disorder serialization round-trips bit for bit") {
  auto d = sample_disorder(7, -0.3, 1.7, 2024);
  std::stringstream ss;
  write_disorder(ss, d);
  auto r = read_disorder(ss);
  CHECK(r.n == d.n);
  CHECK(r.j0 == d.j0);
  CHECK(r.j == d.j);
  CHECK(r.seed == d.seed);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) CHECK(r.couplings(i, j) == d.couplings(i, j));

  std::stringstream bad("N=2\nJ0=0\n");
  CHECK_THROWS(read_disorder(bad));
}
