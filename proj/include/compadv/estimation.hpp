#pragma once

// Mis-estimation of prices.
//
// A single evaluation is the true price plus Gaussian noise. Over time an
// evaluation follows the mean-reverting recursion
//
//   v' = v + eta * (true_price - v) + sigma * z,   z ~ N(0, 1),
//
// which for 0 < eta < 2 has stationary mean true_price and variance
// sigma^2 / (eta * (2 - eta)). Negative values are clamped to zero and
// counted.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "compadv/errors.hpp"
#include "compadv/random.hpp"

namespace compadv {

struct WalkParams {
  double true_price = 0.0;
  double eta = 1.0;
  double sigma = 0.0;

  bool operator==(const WalkParams&) const = default;
};

inline void validate(const WalkParams& p) {
  if (!(p.eta > 0.0 && p.eta < 2.0)) throw DomainError("walk: eta must lie in (0, 2)");
  if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) throw DomainError("walk: sigma must be >= 0");
  if (!std::isfinite(p.true_price)) throw DomainError("walk: true_price must be finite");
}

struct ClampCounter {
  std::int64_t events = 0;
};

inline double clamp_nonnegative(double v, ClampCounter* clamps) {
  if (v < 0.0) {
    if (clamps) ++clamps->events;
    return 0.0;
  }
  return v;
}

inline double noisy_estimate(double true_price, double sigma, Rng& rng,
                             ClampCounter* clamps = nullptr) {
  if (!(sigma >= 0.0)) throw DomainError("noisy_estimate: sigma must be >= 0");
  if (sigma == 0.0) return true_price;
  return clamp_nonnegative(true_price + sigma * rng.normal(), clamps);
}

inline double walk_step(double current, const WalkParams& p, Rng& rng,
                        ClampCounter* clamps = nullptr) {
  double next = current + p.eta * (p.true_price - current);
  if (p.sigma > 0.0) next += p.sigma * rng.normal();
  return clamp_nonnegative(next, clamps);
}

struct StationaryStats {
  double mean = 0.0;
  double variance = 0.0;
};

inline StationaryStats stationary_stats(const WalkParams& p) {
  validate(p);
  return {p.true_price, p.sigma * p.sigma / (p.eta * (2.0 - p.eta))};
}

struct WalkTrace {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::int64_t clamp_events = 0;
};

// values[0] is `start`; each later value is one walk_step.
inline WalkTrace simulate_walk(const WalkParams& p, double start, std::size_t steps,
                               std::uint64_t seed) {
  validate(p);
  WalkTrace t;
  t.seed = seed;
  t.values.reserve(steps + 1);
  Rng rng(seed);
  ClampCounter clamps;
  double v = start;
  t.values.push_back(v);
  for (std::size_t k = 0; k < steps; ++k) {
    v = walk_step(v, p, rng, &clamps);
    t.values.push_back(v);
  }
  t.clamp_events = clamps.events;
  return t;
}

// Independent traces started at the true price; trace k uses the stream
// ("walk", k) under the master seed.
inline std::vector<WalkTrace> simulate_walks(const WalkParams& p, std::size_t traces,
                                             std::size_t steps, std::uint64_t master_seed) {
  std::vector<WalkTrace> out;
  out.reserve(traces);
  for (std::size_t k = 0; k < traces; ++k)
    out.push_back(simulate_walk(p, p.true_price, steps, derive_seed(master_seed, "walk", k)));
  return out;
}

}  // namespace compadv
