#pragma once

// Round-based market.
//
// Each round every seller posts, per job, the profit-maximizing price against
// the density of break-even prices of the other players who demand that job.
// Buyers then take the cheapest offer (lowest seller id on ties) when it is
// strictly below their own break-even price, and self-produce otherwise.
// Money moves in whole quanta, so every round is exactly zero-sum; energy
// expended plus system energy saved reproduces the autarky energy of the
// round's demand.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "compadv/assignment.hpp"
#include "compadv/econ.hpp"
#include "compadv/pricing.hpp"
#include "compadv/random.hpp"

namespace compadv {

struct Offer {
  std::size_t seller = 0;
  std::size_t job = 0;
  Money price;  // posted price in quanta
  std::int64_t expected_buyers = 0;

  bool operator==(const Offer&) const = default;
};

struct TradeRecord {
  std::size_t buyer = 0;
  std::size_t seller = 0;
  std::size_t job = 0;
  std::int64_t units = 0;
  Money price;                       // per unit
  double buyer_self_cost = 0.0;      // energy per unit
  double seller_cost = 0.0;          // energy per unit
  double system_energy_saved = 0.0;  // units * (buyer_self_cost - seller_cost)

  bool operator==(const TradeRecord&) const = default;
};

struct SelfProduction {
  std::size_t player = 0;
  std::size_t job = 0;
  std::int64_t units = 0;
  double energy = 0.0;
  bool forced = false;  // a purchase was wanted but the buyer could not pay

  bool operator==(const SelfProduction&) const = default;
};

struct RoundReport {
  std::int64_t round = 0;
  std::vector<TradeRecord> trades;
  std::vector<SelfProduction> self_productions;
  std::vector<Money> money_delta;  // per player
  Money money_delta_total;
  double energy_expended_total = 0.0;
  double energy_saved_total = 0.0;      // system-wide would-have-been-consumed energy
  double buyer_energy_saved_total = 0.0;  // the buyers' share: self cost - price / c
  double autarky_energy = 0.0;
  std::int64_t forced_self_productions = 0;

  bool operator==(const RoundReport&) const = default;
};

struct MarketState {
  std::int64_t round = 0;
  std::vector<Player> players;

  bool operator==(const MarketState&) const = default;
};

inline MarketState initial_state(const EconomyConfig& cfg) { return {0, cfg.players}; }

enum class TradeChoice { Buy, SelfProduce };

inline TradeChoice trade_decision(double self_cost_money, double best_offer) {
  return best_offer < self_cost_money ? TradeChoice::Buy : TradeChoice::SelfProduce;
}

// Offers depend only on the economy, not on balances.
inline std::vector<Offer> post_offers(const EconomyConfig& cfg) {
  std::vector<Offer> offers;
  const std::size_t np = cfg.num_players();
  std::vector<double> pool;
  for (std::size_t x = 0; x < cfg.num_jobs(); ++x) {
    const auto be = break_even_prices(cfg, x);
    for (std::size_t j = 0; j < np; ++j) {
      pool.clear();
      for (std::size_t i = 0; i < np; ++i)
        if (i != j && cfg.demand[i][x] > 0) pool.push_back(be[i]);
      const PriceDensity d = build_price_density(pool);
      const PriceSolution s = optimal_price(be[j], d, cfg.price_quantum);
      if (s.profit > 0.0 && s.ticks)
        offers.push_back({j, x, Money(*s.ticks), s.buyers});
    }
  }
  return offers;
}

class Market {
 public:
  explicit Market(EconomyConfig cfg) : cfg_(std::move(cfg)) {
    validate(cfg_);
    offers_ = post_offers(cfg_);
    const std::size_t nj = cfg_.num_jobs();
    best_.assign(nj, std::nullopt);
    second_.assign(nj, std::nullopt);
    const auto rank = detail::id_rank(cfg_.players);
    auto better = [&](std::size_t a, std::size_t b) {
      const auto& oa = offers_[a];
      const auto& ob = offers_[b];
      return oa.price < ob.price || (oa.price == ob.price && rank[oa.seller] < rank[ob.seller]);
    };
    for (std::size_t k = 0; k < offers_.size(); ++k) {
      const std::size_t x = offers_[k].job;
      if (!best_[x] || better(k, *best_[x])) {
        second_[x] = best_[x];
        best_[x] = k;
      } else if (!second_[x] || better(k, *second_[x])) {
        second_[x] = k;
      }
    }
    costs_.resize(cfg_.num_players() * nj);
    for (std::size_t i = 0; i < cfg_.num_players(); ++i)
      for (std::size_t x = 0; x < nj; ++x) costs_[i * nj + x] = cfg_.cost(i, x);
    autarky_ = autarky_energy(cfg_);
  }

  const EconomyConfig& config() const { return cfg_; }
  const std::vector<Offer>& offers() const { return offers_; }

  // Cheapest offer for job x from anyone but `buyer`.
  std::optional<Offer> best_offer_for(std::size_t buyer, std::size_t x) const {
    if (best_[x] && offers_[*best_[x]].seller != buyer) return offers_[*best_[x]];
    if (best_[x] && second_[x]) return offers_[*second_[x]];
    return std::nullopt;
  }

  // The seed orders each buyer's purchases; it only matters when a buyer
  // cannot afford all of them.
  RoundReport execute_round(MarketState& state, std::uint64_t seed) const {
    const std::size_t np = cfg_.num_players();
    const std::size_t nj = cfg_.num_jobs();
    const double c = cfg_.conversion;
    const double q = cfg_.price_quantum;

    RoundReport r;
    r.round = state.round + 1;
    r.money_delta.assign(np, Money{});
    r.autarky_energy = autarky_;

    Rng rng(seed);
    std::vector<std::size_t> order(nj);
    for (std::size_t b = 0; b < np; ++b) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      // Fisher-Yates with our own uniform draws keeps the order portable.
      for (std::size_t k = nj; k > 1; --k) {
        const auto pick = static_cast<std::size_t>(rng.next() % k);
        std::swap(order[k - 1], order[pick]);
      }
      // Purchases are paid from the balance at the start of the round.
      Money budget = state.players[b].money;
      for (std::size_t x : order) {
        const std::int64_t units = cfg_.demand[b][x];
        if (units == 0) continue;
        const double self_cost = costs_[b * nj + x];
        const auto offer = best_offer_for(b, x);
        bool forced = false;
        if (offer && trade_decision(c * self_cost, offer->price.value(q)) == TradeChoice::Buy) {
          const Money bill = offer->price * units;
          if (bill <= budget) {
            budget -= bill;
            const double seller_cost = costs_[offer->seller * nj + x];
            TradeRecord t{b, offer->seller, x, units, offer->price, self_cost, seller_cost,
                          static_cast<double>(units) * (self_cost - seller_cost)};
            r.money_delta[b] -= bill;
            r.money_delta[offer->seller] += bill;
            r.energy_expended_total += static_cast<double>(units) * seller_cost;
            r.energy_saved_total += t.system_energy_saved;
            r.buyer_energy_saved_total +=
                static_cast<double>(units) * (self_cost - offer->price.value(q) / c);
            r.trades.push_back(t);
            continue;
          }
          forced = true;
        }
        const double e = static_cast<double>(units) * self_cost;
        r.self_productions.push_back({b, x, units, e, forced});
        r.energy_expended_total += e;
        if (forced) ++r.forced_self_productions;
      }
    }

    // Canonical order: by buyer, then job.
    std::sort(r.trades.begin(), r.trades.end(),
              [](const TradeRecord& a, const TradeRecord& b) { return std::pair(a.buyer, a.job) < std::pair(b.buyer, b.job); });
    std::sort(r.self_productions.begin(), r.self_productions.end(), [](const SelfProduction& a, const SelfProduction& b) {
      return std::pair(a.player, a.job) < std::pair(b.player, b.job);
    });

    // Ledger application.
    for (const auto& t : r.trades) {
      auto& buyer = state.players[t.buyer];
      auto& seller = state.players[t.seller];
      const auto u = static_cast<double>(t.units);
      seller.energy_spent += u * t.seller_cost;
      buyer.energy_saved += u * (t.buyer_self_cost - t.price.value(q) / c);
    }
    for (const auto& s : r.self_productions) state.players[s.player].energy_spent += s.energy;
    for (std::size_t i = 0; i < np; ++i) {
      state.players[i].money += r.money_delta[i];
      r.money_delta_total += r.money_delta[i];
    }
    state.round = r.round;
    return r;
  }

 private:
  EconomyConfig cfg_;
  std::vector<Offer> offers_;
  std::vector<std::optional<std::size_t>> best_;
  std::vector<std::optional<std::size_t>> second_;
  std::vector<double> costs_;
  double autarky_ = 0.0;
};

inline RoundReport execute_round(const EconomyConfig& cfg, MarketState& state, std::uint64_t seed) {
  return Market(cfg).execute_round(state, seed);
}

// Ledger audit of one round against the economy. Recomputes every money
// transfer and energy term from the trade list and checks
//   sum of money deltas == 0 exactly,
//   expended + saved == autarky energy within 1e-9 relative.
inline bool conservation_check(const RoundReport& r, const EconomyConfig& cfg) {
  const std::size_t np = cfg.num_players();
  const std::size_t nj = cfg.num_jobs();
  if (r.money_delta.size() != np) return false;

  std::vector<Money> ledger(np);
  double expended = 0.0;
  double saved = 0.0;
  // Units accounted for per (player, job); must match the demand exactly.
  std::vector<std::int64_t> covered(np * nj, 0);
  for (const auto& t : r.trades) {
    if (t.buyer >= np || t.seller >= np || t.job >= nj || t.buyer == t.seller || t.units <= 0)
      return false;
    if (t.buyer_self_cost != cfg.cost(t.buyer, t.job) || t.seller_cost != cfg.cost(t.seller, t.job))
      return false;
    const Money bill = t.price * t.units;
    ledger[t.buyer] -= bill;
    ledger[t.seller] += bill;
    const auto u = static_cast<double>(t.units);
    expended += u * t.seller_cost;
    saved += u * (t.buyer_self_cost - t.seller_cost);
    covered[t.buyer * nj + t.job] += t.units;
  }
  for (const auto& s : r.self_productions) {
    if (s.player >= np || s.job >= nj || s.units <= 0) return false;
    expended += s.energy;
    covered[s.player * nj + s.job] += s.units;
  }
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t x = 0; x < nj; ++x)
      if (covered[i * nj + x] != cfg.demand[i][x]) return false;

  Money total;
  for (std::size_t i = 0; i < np; ++i) {
    if (ledger[i] != r.money_delta[i]) return false;
    total += r.money_delta[i];
  }
  if (total != Money{} || r.money_delta_total != Money{}) return false;

  const double autarky = autarky_energy(cfg);
  const double tol = 1e-9 * autarky;
  return std::abs(expended - r.energy_expended_total) <= tol &&
         std::abs(saved - r.energy_saved_total) <= tol &&
         std::abs(expended + saved - autarky) <= tol;
}

// Every trade strictly beats the buyer's self-production cost.
inline bool individually_rational(const RoundReport& r, const EconomyConfig& cfg) {
  for (const auto& t : r.trades)
    if (!(t.price.value(cfg.price_quantum) < cfg.conversion * t.buyer_self_cost)) return false;
  return true;
}

// Runs `rounds` rounds with per-round seeds derived from `master_seed`.
class Simulation {
 public:
  Simulation(EconomyConfig cfg, std::uint64_t master_seed)
      : market_(std::move(cfg)), state_(initial_state(market_.config())), seed_(master_seed) {}

  RoundReport step() {
    const auto seed = derive_seed(seed_, "market", static_cast<std::uint64_t>(state_.round));
    return market_.execute_round(state_, seed);
  }

  std::vector<RoundReport> run(std::int64_t rounds) {
    std::vector<RoundReport> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(rounds, 0)));
    for (std::int64_t k = 0; k < rounds; ++k) out.push_back(step());
    return out;
  }

  const Market& market() const { return market_; }
  const MarketState& state() const { return state_; }

 private:
  Market market_;
  MarketState state_;
  std::uint64_t seed_;
};

}  // namespace compadv
