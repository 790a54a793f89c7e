#pragma once

// Seeded random streams.
//
// Every draw in a scenario descends from one 64-bit master seed. A stream is
// identified by a tag string and up to two indices; its seed is
//
//   splitmix64(master ^ fnv1a64(tag) ^ splitmix64(i0 + 1) ^ splitmix64(~i1))
//
// (derivation version 1). The engine is std::mt19937_64, whose output sequence
// is fixed by the standard. Uniform and normal variates are produced here
// rather than through <random> distributions so that the values are identical
// across standard library implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace compadv {

inline constexpr int kSeedDerivationVersion = 1;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t i0 = 0,
                                    std::uint64_t i1 = 0) {
  return splitmix64(master ^ fnv1a64(tag) ^ splitmix64(i0 + 1) ^
                    splitmix64(~i1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1].
  double uniform_open0() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the sine branch is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double lognormal(double mu, double sigma) {
    return std::exp(normal(mu, sigma));
  }

  // Pareto(scale, shape) by inversion: scale * U^(-1/shape), U in (0, 1].
  double pareto(double scale, double shape) {
    return scale * std::pow(uniform_open0(), -1.0 / shape);
  }

  double exponential(double rate) { return -std::log(uniform_open0()) / rate; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace compadv
