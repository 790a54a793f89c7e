#pragma once

// Population price density and a seller's profit-maximizing posted price.
//
// A finite population turns n(P) into point masses at break-even prices, so
// integrals over the density are exact sums. A buyer trades only when the
// posted price is strictly below their own break-even price. Posted prices
// live on the grid k * quantum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "compadv/errors.hpp"

namespace compadv {

struct PriceAtom {
  double price = 0.0;
  std::int64_t mass = 0;

  bool operator==(const PriceAtom&) const = default;
};

struct PriceDensity {
  std::vector<PriceAtom> atoms;  // strictly increasing prices, masses >= 1

  double p_max() const { return atoms.empty() ? 0.0 : atoms.back().price; }
  bool operator==(const PriceDensity&) const = default;
};

struct PriceSolution {
  double price = 0.0;
  std::int64_t buyers = 0;
  double profit = 0.0;
  // Grid index of `price`; empty when no positive-profit price exists and
  // `price` is the (possibly off-grid) break-even price.
  std::optional<std::int64_t> ticks;
};

inline PriceDensity build_price_density(std::span<const double> costs,
                                        std::optional<std::size_t> exclude = std::nullopt) {
  std::vector<double> v;
  v.reserve(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!(costs[i] >= 0.0) || !std::isfinite(costs[i]))
      throw DomainError("build_price_density: costs must be finite and nonnegative");
    if (exclude && *exclude == i) continue;
    v.push_back(costs[i]);
  }
  std::sort(v.begin(), v.end());
  PriceDensity d;
  for (double c : v) {
    if (!d.atoms.empty() && d.atoms.back().price == c)
      ++d.atoms.back().mass;
    else
      d.atoms.push_back({c, 1});
  }
  return d;
}

inline std::int64_t total_mass(const PriceDensity& d) {
  std::int64_t n = 0;
  for (const auto& a : d.atoms) n += a.mass;
  return n;
}

// Mass at prices <= posted.
inline std::int64_t mass_at_or_below(const PriceDensity& d, double posted) {
  std::int64_t n = 0;
  for (const auto& a : d.atoms) {
    if (a.price > posted) break;
    n += a.mass;
  }
  return n;
}

// B(posted): mass strictly above the posted price.
inline std::int64_t buyer_count(const PriceDensity& d, double posted) {
  auto it = std::upper_bound(d.atoms.begin(), d.atoms.end(), posted,
                             [](double p, const PriceAtom& a) { return p < a.price; });
  std::int64_t n = 0;
  for (; it != d.atoms.end(); ++it) n += it->mass;
  return n;
}

inline double profit(double posted, double break_even, const PriceDensity& d) {
  return (posted - break_even) * static_cast<double>(buyer_count(d, posted));
}

// Largest k with k * quantum < price (price > 0).
inline std::int64_t grid_index_below(double price, double quantum) {
  auto k = static_cast<std::int64_t>(std::ceil(price / quantum)) - 1;
  while (k > 0 && static_cast<double>(k) * quantum >= price) --k;
  while (static_cast<double>(k + 1) * quantum < price) ++k;
  return k;
}

inline double grid_price(std::int64_t k, double quantum) { return static_cast<double>(k) * quantum; }

// Profit over grid prices is maximized just below some atom: between
// breakpoints B is constant and the margin grows with price. Candidates are
// therefore the largest grid price under each atom above break-even; the
// lowest price wins ties.
inline PriceSolution optimal_price(double break_even, const PriceDensity& d, double quantum) {
  if (!(quantum > 0.0) || !std::isfinite(quantum))
    throw DomainError("optimal_price: quantum must be positive");
  PriceSolution best{break_even, buyer_count(d, break_even), 0.0, std::nullopt};
  // Atoms ascend, so candidate prices ascend too; ">" keeps the lowest on ties.
  for (const auto& a : d.atoms) {
    if (!(a.price > break_even)) continue;
    const std::int64_t k = grid_index_below(a.price, quantum);
    const double p = grid_price(k, quantum);
    if (!(p > break_even)) continue;
    const std::int64_t b = buyer_count(d, p);
    const double g = (p - break_even) * static_cast<double>(b);
    if (g > best.profit) best = {p, b, g, k};
  }
  return best;
}

// True iff the seller cannot induce a single trade at any grid price above
// break-even.
inline bool no_trade_witness(const PriceDensity& d, double break_even, double quantum) {
  const PriceSolution s = optimal_price(break_even, d, quantum);
  if (s.profit != 0.0) return false;
  for (const auto& a : d.atoms) {
    if (!(a.price > break_even)) continue;
    const double p = grid_price(grid_index_below(a.price, quantum), quantum);
    if (p > break_even && buyer_count(d, p) > 0) return false;
  }
  return true;
}

}  // namespace compadv
