#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace glassydicke::rng {

// SplitMix64 finalizer; full-period bijective mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derive an independent stream key from a seed and index words. The chain is
// order-sensitive and collision-resistant enough for desk-scale stream counts.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a) {
  return mix64(mix64(seed) ^ (a * 0xD6E8FEB86659FD93ull));
}
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive(derive(seed, a), b);
}
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) {
  return derive(derive(seed, a, b), c);
}

// Stateless counter-based draw: value n of the stream identified by key.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t n) {
  return mix64(key + n * 0x9E3779B97F4A7C15ull);
}

// Uniform double in (0,1), never exactly 0 or 1.
inline double to_u01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller from two counter draws of a keyed stream.
inline double keyed_normal(std::uint64_t key) {
  double u1 = to_u01(at(key, 0));
  double u2 = to_u01(at(key, 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Sequential engine for Monte Carlo trajectories; seeded from a derived key.
class Engine {
 public:
  explicit Engine(std::uint64_t key) : gen_(key) {}

  std::uint64_t next_u64() { return gen_(); }
  double next_u01() { return to_u01(gen_()); }

  // integer in [0, n)
  std::uint32_t next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t k = next_below(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[k]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace glassydicke::rng
