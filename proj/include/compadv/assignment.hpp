#pragma once

// Job-to-producer assignment minimizing net system energy.
//
// One producer makes the whole system demand of a job; a producer may hold
// several jobs. The exhaustive solver is the oracle for the scalable one.
// Ties are broken lexicographically by (job id, player id).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "compadv/econ.hpp"

namespace compadv {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct Assignment {
  // producer_of[x] is the player index producing job x.
  std::vector<std::size_t> producer_of;

  bool operator==(const Assignment&) const = default;
};

struct AssignmentResult {
  Assignment assignment;
  double energy = 0.0;
};

// cost(x, i) = total_demand(x) * energy cost of player i on job x.
class AssignmentCostMatrix {
 public:
  explicit AssignmentCostMatrix(const EconomyConfig& cfg)
      : jobs_(cfg.num_jobs()), players_(cfg.num_players()), data_(jobs_ * players_) {
    for (std::size_t x = 0; x < jobs_; ++x) {
      const auto d = static_cast<double>(total_demand(cfg, x));
      for (std::size_t i = 0; i < players_; ++i) data_[x * players_ + i] = d * cfg.cost(i, x);
    }
  }

  double operator()(std::size_t x, std::size_t i) const { return data_[x * players_ + i]; }
  std::size_t jobs() const { return jobs_; }
  std::size_t players() const { return players_; }

  // Sum over jobs in index order; every solver sums the same way so equal
  // assignments compare bit-identical.
  double total(const Assignment& a) const {
    double e = 0.0;
    for (std::size_t x = 0; x < jobs_; ++x) e += (*this)(x, a.producer_of[x]);
    return e;
  }

 private:
  std::size_t jobs_;
  std::size_t players_;
  std::vector<double> data_;
};

namespace detail {

inline void check_assignment(const Assignment& a, const EconomyConfig& cfg) {
  if (a.producer_of.size() != cfg.num_jobs())
    throw StructuralError("assignment does not cover every job exactly once");
  for (std::size_t x = 0; x < a.producer_of.size(); ++x)
    if (a.producer_of[x] >= cfg.num_players())
      throw StructuralError("assignment for job '" + cfg.jobs[x].id + "' names no existing player");
}

// Indices of items sorted by id.
template <typename T>
std::vector<std::size_t> id_order(const std::vector<T>& items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a].id < items[b].id; });
  return order;
}

template <typename T>
std::vector<std::size_t> id_rank(const std::vector<T>& items) {
  const auto order = id_order(items);
  std::vector<std::size_t> rank(items.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

inline bool within_cap(std::size_t players, std::size_t jobs, std::uint64_t cap) {
  if (jobs == 0) return true;
  if (players == 0) return false;
  std::uint64_t n = 1;
  for (std::size_t k = 0; k < jobs; ++k) {
    if (n > cap / players) return false;
    n *= players;
  }
  return n <= cap;
}

}  // namespace detail

inline double net_energy(const Assignment& a, const EconomyConfig& cfg) {
  detail::check_assignment(a, cfg);
  return AssignmentCostMatrix(cfg).total(a);
}

inline AssignmentResult brute_force_min_assignment(const EconomyConfig& cfg,
                                                   std::uint64_t cap = kDefaultEnumerationCap) {
  const std::size_t nj = cfg.num_jobs();
  const std::size_t np = cfg.num_players();
  if (nj > 0 && np == 0) throw StructuralError("jobs exist but the economy has no players");
  if (!detail::within_cap(np, nj, cap))
    throw CapacityError("assignment search space exceeds the enumeration cap of " +
                        std::to_string(cap) + " candidates");

  const AssignmentCostMatrix m(cfg);
  const auto job_order = detail::id_order(cfg.jobs);
  const auto player_order = detail::id_order(cfg.players);

  // Odometer over player ranks; the most significant digit is the job with
  // the smallest id, so candidates are visited in lexicographic order.
  std::vector<std::size_t> digit(nj, 0);
  Assignment cur{std::vector<std::size_t>(nj, player_order.empty() ? 0 : player_order[0])};
  AssignmentResult best{cur, m.total(cur)};
  if (nj == 0) return best;

  while (true) {
    std::size_t pos = nj;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < np) break;
      digit[pos] = 0;
      if (pos == 0) return best;
    }
    for (std::size_t k = pos; k < nj; ++k) cur.producer_of[job_order[k]] = player_order[digit[k]];
    const double e = m.total(cur);
    if (e < best.energy) best = {cur, e};
  }
}

// Each job to its cheapest producer (smallest id on ties).
inline Assignment greedy_assignment(const EconomyConfig& cfg) {
  const AssignmentCostMatrix m(cfg);
  const auto rank = detail::id_rank(cfg.players);
  Assignment a{std::vector<std::size_t>(cfg.num_jobs(), 0)};
  for (std::size_t x = 0; x < cfg.num_jobs(); ++x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cfg.num_players(); ++i) {
      if (m(x, i) < m(x, best) || (m(x, i) == m(x, best) && rank[i] < rank[best])) best = i;
    }
    a.producer_of[x] = best;
  }
  return a;
}

// Single-job reassignment moves, first improvement, until none improves.
inline Assignment local_search(Assignment a, const EconomyConfig& cfg) {
  detail::check_assignment(a, cfg);
  const AssignmentCostMatrix m(cfg);
  const auto job_order = detail::id_order(cfg.jobs);
  const auto player_order = detail::id_order(cfg.players);
  double energy = m.total(a);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t x : job_order) {
      for (std::size_t i : player_order) {
        if (i == a.producer_of[x]) continue;
        const std::size_t prev = a.producer_of[x];
        a.producer_of[x] = i;
        const double e = m.total(a);
        if (e < energy) {
          energy = e;
          improved = true;
        } else {
          a.producer_of[x] = prev;
        }
      }
    }
  }
  return a;
}

inline AssignmentResult optimal_assignment(const EconomyConfig& cfg,
                                           std::uint64_t cap = kDefaultEnumerationCap) {
  if (cfg.num_jobs() > 0 && cfg.num_players() == 0)
    throw StructuralError("jobs exist but the economy has no players");
  if (detail::within_cap(cfg.num_players(), cfg.num_jobs(), cap))
    return brute_force_min_assignment(cfg, cap);
  Assignment a = local_search(greedy_assignment(cfg), cfg);
  const double e = AssignmentCostMatrix(cfg).total(a);
  return {std::move(a), e};
}

// True iff no single-job reassignment strictly lowers net energy.
inline bool stationarity_check(const Assignment& a, const EconomyConfig& cfg) {
  detail::check_assignment(a, cfg);
  const AssignmentCostMatrix m(cfg);
  const double base = m.total(a);
  Assignment probe = a;
  for (std::size_t x = 0; x < cfg.num_jobs(); ++x) {
    for (std::size_t i = 0; i < cfg.num_players(); ++i) {
      if (i == a.producer_of[x]) continue;
      probe.producer_of[x] = i;
      if (m.total(probe) < base) return false;
    }
    probe.producer_of[x] = a.producer_of[x];
  }
  return true;
}

}  // namespace compadv
