#pragma once

// Domain types of the economy and the efficiency -> energy -> price mappings.
//
// Energy cost of one unit of job x for player i is workload(x) / eps_i^x.
// The lowest profitable selling price is conversion * cost. Money is held in
// integer multiples of the price quantum so that transfers are exactly
// zero-sum.

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "compadv/errors.hpp"

namespace compadv {

// An amount of currency in units of the economy's price quantum.
struct Money {
  std::int64_t ticks = 0;

  constexpr Money() = default;
  constexpr explicit Money(std::int64_t t) : ticks(t) {}

  constexpr Money& operator+=(Money o) {
    ticks += o.ticks;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    ticks -= o.ticks;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return Money(a.ticks + b.ticks); }
  friend constexpr Money operator-(Money a, Money b) { return Money(a.ticks - b.ticks); }
  friend constexpr Money operator-(Money a) { return Money(-a.ticks); }
  friend constexpr Money operator*(Money a, std::int64_t k) { return Money(a.ticks * k); }
  friend constexpr auto operator<=>(Money, Money) = default;

  double value(double quantum) const { return static_cast<double>(ticks) * quantum; }
};

// Converts a currency amount to the nearest whole number of quanta.
inline Money to_money(double amount, double quantum) {
  return Money(static_cast<std::int64_t>(std::llround(amount / quantum)));
}

struct JobSpec {
  std::string id;
  double workload = 1.0;  // energy units per unit of the job

  bool operator==(const JobSpec&) const = default;
};

struct Player {
  std::string id;
  std::vector<double> efficiencies;  // indexed like EconomyConfig::jobs
  Money money;
  double energy_spent = 0.0;
  double energy_saved = 0.0;

  bool operator==(const Player&) const = default;
};

// How executing a job draws on energy. `free` is the counter-model in which
// energy may be created: every execution costs nothing.
enum class EnergyModel { conserved, free };

struct EconomyConfig {
  std::vector<Player> players;
  std::vector<JobSpec> jobs;
  double conversion = 1.0;     // currency per energy unit
  double price_quantum = 0.01; // currency
  // demand[i][x]: units of job x player i consumes per round.
  std::vector<std::vector<std::int64_t>> demand;
  EnergyModel energy_model = EnergyModel::conserved;

  std::size_t num_players() const { return players.size(); }
  std::size_t num_jobs() const { return jobs.size(); }

  // Energy player i spends on one unit of job x.
  double cost(std::size_t i, std::size_t x) const;

  std::optional<std::size_t> player_index(const std::string& id) const {
    for (std::size_t i = 0; i < players.size(); ++i)
      if (players[i].id == id) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> job_index(const std::string& id) const {
    for (std::size_t x = 0; x < jobs.size(); ++x)
      if (jobs[x].id == id) return x;
    return std::nullopt;
  }
};

inline double energy_cost(double efficiency, double workload) {
  if (!(efficiency > 0.0) || !std::isfinite(efficiency))
    throw DomainError("energy_cost: efficiency must be positive and finite");
  if (!(workload > 0.0) || !std::isfinite(workload))
    throw DomainError("energy_cost: workload must be positive and finite");
  return workload / efficiency;
}

inline double break_even_price(double cost, double conversion) {
  if (!(cost >= 0.0)) throw DomainError("break_even_price: negative cost");
  if (!(conversion > 0.0)) throw DomainError("break_even_price: conversion must be positive");
  return conversion * cost;
}

inline double EconomyConfig::cost(std::size_t i, std::size_t x) const {
  if (energy_model == EnergyModel::free) return 0.0;
  return energy_cost(players[i].efficiencies[x], jobs[x].workload);
}

// Throws DomainError or StructuralError on the first violated invariant.
inline void validate(const EconomyConfig& cfg) {
  if (!(cfg.conversion > 0.0) || !std::isfinite(cfg.conversion))
    throw DomainError("conversion must be positive and finite");
  if (!(cfg.price_quantum > 0.0) || !std::isfinite(cfg.price_quantum))
    throw DomainError("price_quantum must be positive and finite");

  std::unordered_set<std::string> seen;
  for (const auto& job : cfg.jobs) {
    if (!seen.insert(job.id).second) throw StructuralError("duplicate job id '" + job.id + "'");
    if (!(job.workload > 0.0) || !std::isfinite(job.workload))
      throw DomainError("job '" + job.id + "': workload must be positive and finite");
  }
  seen.clear();
  for (const auto& p : cfg.players) {
    if (!seen.insert(p.id).second) throw StructuralError("duplicate player id '" + p.id + "'");
    if (p.efficiencies.size() != cfg.jobs.size())
      throw StructuralError("player '" + p.id + "': efficiency vector does not cover every job");
    for (std::size_t x = 0; x < cfg.jobs.size(); ++x) {
      const double e = p.efficiencies[x];
      if (!(e > 0.0) || !std::isfinite(e))
        throw DomainError("player '" + p.id + "', job '" + cfg.jobs[x].id +
                          "': efficiency must be positive and finite");
    }
  }
  if (cfg.demand.size() != cfg.players.size())
    throw StructuralError("demand matrix must have one row per player");
  for (std::size_t i = 0; i < cfg.demand.size(); ++i) {
    if (cfg.demand[i].size() != cfg.jobs.size())
      throw StructuralError("demand row for '" + cfg.players[i].id + "' must cover every job");
    for (auto d : cfg.demand[i])
      if (d < 0) throw DomainError("demand for '" + cfg.players[i].id + "' is negative");
  }
}

inline std::int64_t total_demand(const EconomyConfig& cfg, std::size_t x) {
  std::int64_t total = 0;
  for (const auto& row : cfg.demand) total += row[x];
  return total;
}

// System energy when every player self-produces their own demand.
inline double autarky_energy(const EconomyConfig& cfg) {
  double total = 0.0;
  for (std::size_t i = 0; i < cfg.num_players(); ++i)
    for (std::size_t x = 0; x < cfg.num_jobs(); ++x)
      if (cfg.demand[i][x] != 0)
        total += static_cast<double>(cfg.demand[i][x]) * cfg.cost(i, x);
  return total;
}

// Break-even prices of every player for job x, in player order.
inline std::vector<double> break_even_prices(const EconomyConfig& cfg, std::size_t x) {
  std::vector<double> out;
  out.reserve(cfg.num_players());
  for (std::size_t i = 0; i < cfg.num_players(); ++i)
    out.push_back(break_even_price(cfg.cost(i, x), cfg.conversion));
  return out;
}

// Demand matrix with the same number of units for every (player, job).
inline std::vector<std::vector<std::int64_t>> constant_demand(std::size_t players,
                                                              std::size_t jobs,
                                                              std::int64_t units) {
  return std::vector<std::vector<std::int64_t>>(players, std::vector<std::int64_t>(jobs, units));
}

}  // namespace compadv
