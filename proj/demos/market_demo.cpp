// Three players, two jobs: watch specialization pay off round by round.
#include <cstdio>

#include "compadv/analysis.hpp"
#include "compadv/assignment.hpp"
#include "compadv/market.hpp"

int main() {
  using namespace compadv;
  EconomyConfig cfg;
  cfg.jobs = {{"x", 10.0}, {"y", 10.0}};
  cfg.price_quantum = 1.0;
  cfg.players = {{"P1", {2.0, 1.0}, Money(100)}, {"P2", {1.0, 2.0}, Money(100)}, {"P3", {1.0, 1.0}, Money(100)}};
  cfg.demand = constant_demand(3, 2, 1);

  const auto best = optimal_assignment(cfg);
  std::printf("autarky energy %.1f, best assignment %.1f\n", autarky_energy(cfg), best.energy);

  Simulation sim(cfg, 2024);
  for (const auto& o : sim.market().offers())
    std::printf("offer: %s sells %s at %lld\n", cfg.players[o.seller].id.c_str(), cfg.jobs[o.job].id.c_str(),
                static_cast<long long>(o.price.ticks));

  for (int k = 0; k < 8; ++k) {
    const auto r = sim.step();
    std::printf("round %lld: %zu trades, %zu forced, expended %.1f of %.1f\n", static_cast<long long>(r.round),
                r.trades.size(), static_cast<std::size_t>(r.forced_self_productions), r.energy_expended_total,
                r.autarky_energy);
  }
  for (const auto& p : sim.state().players)
    std::printf("%s: money %lld, energy saved %.1f\n", p.id.c_str(), static_cast<long long>(p.money.ticks),
                p.energy_saved);
}
