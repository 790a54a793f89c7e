#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls the solver or pricing code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "compadv/econ.hpp"
#include "compadv/pricing.hpp"
#include "compadv/random.hpp"

namespace compadv::testing {

// Three players, jobs x and y of workload 10, conversion 1:
//   P1 (x:2, y:1), P2 (x:1, y:2), P3 (x:1, y:1).
inline EconomyConfig golden_economy(double quantum = 1.0, std::int64_t demand = 1, double money = 1000.0) {
  EconomyConfig cfg;
  cfg.jobs = {{"x", 10.0}, {"y", 10.0}};
  cfg.conversion = 1.0;
  cfg.price_quantum = quantum;
  cfg.players = {{"P1", {2.0, 1.0}, to_money(money, quantum)},
                 {"P2", {1.0, 2.0}, to_money(money, quantum)},
                 {"P3", {1.0, 1.0}, to_money(money, quantum)}};
  cfg.demand = constant_demand(3, 2, demand);
  return cfg;
}

inline std::string id(const char* prefix, std::size_t k) {
  return prefix + std::to_string(1000 + k);
}

// Uniform efficiencies in [lo, hi], workloads in [1, 20], demand in [0, max_demand].
inline EconomyConfig random_economy(Rng& rng, std::size_t players, std::size_t jobs, double lo = 0.5,
                                    double hi = 2.0, std::int64_t max_demand = 3, double quantum = 0.01) {
  EconomyConfig cfg;
  cfg.conversion = rng.uniform(0.5, 2.0);
  cfg.price_quantum = quantum;
  for (std::size_t x = 0; x < jobs; ++x) cfg.jobs.push_back({id("J", x), rng.uniform(1.0, 20.0)});
  for (std::size_t i = 0; i < players; ++i) {
    Player p;
    p.id = id("P", i);
    for (std::size_t x = 0; x < jobs; ++x) p.efficiencies.push_back(rng.uniform(lo, hi));
    p.money = to_money(1e7, quantum);
    cfg.players.push_back(std::move(p));
  }
  cfg.demand.assign(players, std::vector<std::int64_t>(jobs, 0));
  for (auto& row : cfg.demand)
    for (auto& d : row) d = static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(max_demand + 1));
  return cfg;
}

// Direct double sum of demand * workload / efficiency.
inline double oracle_autarky(const EconomyConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 0; i < cfg.players.size(); ++i)
    for (std::size_t x = 0; x < cfg.jobs.size(); ++x)
      if (cfg.energy_model == EnergyModel::conserved)
        total += static_cast<double>(cfg.demand[i][x]) * cfg.jobs[x].workload / cfg.players[i].efficiencies[x];
  return total;
}

// Minimum net energy by recursive enumeration of every producer choice.
inline double oracle_min_energy(const EconomyConfig& cfg) {
  const std::size_t nj = cfg.jobs.size();
  const std::size_t np = cfg.players.size();
  std::vector<double> demand(nj, 0.0);
  for (std::size_t x = 0; x < nj; ++x)
    for (std::size_t i = 0; i < np; ++i) demand[x] += static_cast<double>(cfg.demand[i][x]);
  std::vector<std::size_t> pick(nj, 0);
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == nj) {
      double e = 0.0;
      for (std::size_t k = 0; k < nj; ++k)
        e += demand[k] * (cfg.jobs[k].workload / cfg.players[pick[k]].efficiencies[k]);
      best = std::min(best, e);
      return;
    }
    for (std::size_t i = 0; i < np; ++i) {
      pick[x] = i;
      self(self, x + 1);
    }
  };
  rec(rec, 0);
  return best;
}

// Buyers at `posted` straight from the raw cost list.
inline std::int64_t oracle_buyers(const std::vector<double>& costs, double posted) {
  return std::count_if(costs.begin(), costs.end(), [&](double c) { return c > posted; });
}

// Maximum profit over every grid price k * quantum up to and including the
// first grid point at or above p_max.
struct ScanResult {
  double profit = 0.0;
  double price = 0.0;
};

inline ScanResult oracle_scan(const std::vector<double>& costs, double break_even, double quantum) {
  double p_max = 0.0;
  for (double c : costs) p_max = std::max(p_max, c);
  const auto last = static_cast<std::int64_t>(std::ceil(p_max / quantum)) + 1;
  ScanResult best{-std::numeric_limits<double>::infinity(), 0.0};
  for (std::int64_t k = 0; k <= last; ++k) {
    const double p = static_cast<double>(k) * quantum;
    const double g = (p - break_even) * static_cast<double>(oracle_buyers(costs, p));
    if (g > best.profit) best = {g, p};
  }
  return best;
}

}  // namespace compadv::testing
