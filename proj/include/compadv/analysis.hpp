#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "compadv/econ.hpp"
#include "compadv/errors.hpp"
#include "compadv/market.hpp"

namespace compadv {

struct WealthSnapshot {
  std::int64_t round = 0;
  std::map<std::string, double> wealth_by_player;        // currency
  std::map<std::string, double> energy_saved_by_player;  // energy units
};

inline WealthSnapshot snapshot(const MarketState& s, double quantum) {
  WealthSnapshot w;
  w.round = s.round;
  for (const auto& p : s.players) {
    w.wealth_by_player[p.id] = p.money.value(quantum);
    w.energy_saved_by_player[p.id] = p.energy_saved;
  }
  return w;
}

// Population Gini: sum_i (2i - n - 1) x_(i) / (n * sum x), x sorted ascending.
inline double gini(std::span<const double> wealths) {
  if (wealths.empty()) throw DomainError("gini: empty wealth vector");
  std::vector<double> v(wealths.begin(), wealths.end());
  for (double w : v)
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("gini: wealths must be finite and >= 0");
  std::sort(v.begin(), v.end());
  const auto n = static_cast<double>(v.size());
  double sum = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum += v[i];
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * v[i];
  }
  if (sum == 0.0) throw DomainError("gini: all wealths are zero");
  return weighted / (n * sum);
}

// Hill estimator of the Pareto tail index over the top k = floor(fraction * n)
// order statistics, thresholded at the (k+1)-th largest value:
//   alpha = k / sum_{i<=k} ln(x_(i) / x_(k+1)).
inline double pareto_tail_fit(std::span<const double> wealths, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw DomainError("pareto_tail_fit: tail_fraction must lie in (0, 1]");
  std::vector<double> v(wealths.begin(), wealths.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  auto k = static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(v.size())));
  if (k >= v.size()) k = v.size() == 0 ? 0 : v.size() - 1;
  if (k < 10) throw CapacityError("pareto_tail_fit: fewer than 10 samples in the tail");
  const double threshold = v[k];
  if (!(threshold > 0.0)) throw DomainError("pareto_tail_fit: tail values must be positive");
  double log_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) log_sum += std::log(v[i] / threshold);
  if (!(log_sum > 0.0)) throw DomainError("pareto_tail_fit: degenerate (constant) tail");
  return static_cast<double>(k) / log_sum;
}

// Average ranks (1-based), ties share the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t s = 0; s < idx.size();) {
    std::size_t e = s;
    while (e + 1 < idx.size() && v[idx[e + 1]] == v[idx[s]]) ++e;
    const double r = 0.5 * static_cast<double>(s + e) + 1.0;
    for (std::size_t k = s; k <= e; ++k) rank[idx[k]] = r;
    s = e + 1;
  }
  return rank;
}

// Spearman's rho as the Pearson correlation of average ranks.
inline double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw StructuralError("spearman: length mismatch");
  if (a.size() < 3) throw CapacityError("spearman: need at least 3 observations");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw DomainError("spearman: constant ranks, correlation undefined");
  return sab / std::sqrt(saa * sbb);
}

// Per player: max over jobs of (population mean cost - own cost).
inline std::vector<double> best_efficiency_margins(const EconomyConfig& cfg) {
  const std::size_t np = cfg.num_players();
  std::vector<double> best(np, -std::numeric_limits<double>::infinity());
  for (std::size_t x = 0; x < cfg.num_jobs(); ++x) {
    double mean = 0.0;
    for (std::size_t i = 0; i < np; ++i) mean += cfg.cost(i, x);
    mean /= static_cast<double>(np);
    for (std::size_t i = 0; i < np; ++i) best[i] = std::max(best[i], mean - cfg.cost(i, x));
  }
  return best;
}

inline double efficiency_wealth_correlation(const WealthSnapshot& snap, const EconomyConfig& cfg) {
  if (cfg.num_players() < 3) throw CapacityError("efficiency_wealth_correlation: need >= 3 players");
  if (snap.wealth_by_player.size() != cfg.num_players())
    throw StructuralError("snapshot players do not match the economy");
  std::vector<double> wealth;
  wealth.reserve(cfg.num_players());
  for (const auto& p : cfg.players) {
    auto it = snap.wealth_by_player.find(p.id);
    if (it == snap.wealth_by_player.end())
      throw StructuralError("snapshot is missing player '" + p.id + "'");
    wealth.push_back(it->second);
  }
  return spearman(best_efficiency_margins(cfg), wealth);
}

struct SavingsPoint {
  std::int64_t round = 0;
  double autarky = 0.0;
  double expended = 0.0;
  double saved = 0.0;
  double saved_fraction = 0.0;
};

inline std::vector<SavingsPoint> system_savings_series(std::span<const RoundReport> reports) {
  std::vector<SavingsPoint> out;
  out.reserve(reports.size());
  for (const auto& r : reports) {
    SavingsPoint s{r.round, r.autarky_energy, r.energy_expended_total, 0.0, 0.0};
    // With no trades nothing can be saved; avoid reporting rounding residue.
    if (!r.trades.empty()) s.saved = std::max(0.0, r.autarky_energy - r.energy_expended_total);
    s.saved_fraction = r.autarky_energy > 0.0 ? std::clamp(s.saved / r.autarky_energy, 0.0, 1.0) : 0.0;
    out.push_back(s);
  }
  return out;
}

}  // namespace compadv
