#pragma once

// Scenario execution: assignment analysis, the market loop, optional
// estimation walks, summaries and artifact files. Outputs are a pure
// function of the scenario (and this library's version).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "compadv/analysis.hpp"
#include "compadv/assignment.hpp"
#include "compadv/csv.hpp"
#include "compadv/estimation.hpp"
#include "compadv/market.hpp"
#include "compadv/random.hpp"
#include "compadv/scenario.hpp"

namespace compadv {

inline constexpr const char* kVersion = "1.0.0";

struct RunArtifacts {
  EconomyConfig economy;
  AssignmentResult assignment;
  bool assignment_exhaustive = false;
  std::vector<RoundReport> reports;
  std::vector<MarketState> states;  // after each round
  std::vector<WalkTrace> walks;
  std::vector<std::pair<std::string, std::string>> summary;
};

using Logger = std::function<void(const std::string&)>;

inline std::optional<double> try_metric(const std::function<double()>& f) {
  try {
    return f();
  } catch (const DomainError&) {
  } catch (const CapacityError&) {
  } catch (const StructuralError&) {
  }
  return std::nullopt;
}

inline RunArtifacts simulate_scenario(const ScenarioConfig& s, const Logger& log = {}) {
  RunArtifacts a;
  a.economy = build_economy(s);
  const auto& eco = a.economy;
  if (log) log(fmt::format("economy: {} players, {} jobs", eco.num_players(), eco.num_jobs()));

  a.assignment_exhaustive = detail::within_cap(eco.num_players(), eco.num_jobs(), kDefaultEnumerationCap);
  a.assignment = optimal_assignment(eco);

  Simulation sim(eco, s.master_seed);
  a.reports.reserve(static_cast<std::size_t>(s.rounds));
  for (std::int64_t k = 0; k < s.rounds; ++k) {
    a.reports.push_back(sim.step());
    a.states.push_back(sim.state());
    if (log && (k + 1) % 100 == 0) log(fmt::format("round {}/{}", k + 1, s.rounds));
  }

  if (s.walk)
    a.walks = simulate_walks(s.walk->params, static_cast<std::size_t>(s.walk->traces),
                             static_cast<std::size_t>(s.walk->steps), s.master_seed);

  const auto& final_players = sim.state().players;
  std::vector<double> wealth;
  for (const auto& p : final_players) wealth.push_back(p.money.value(eco.price_quantum));
  std::int64_t trades = 0, forced = 0;
  double saved = 0.0;
  for (const auto& r : a.reports) {
    trades += static_cast<std::int64_t>(r.trades.size());
    forced += r.forced_self_productions;
    saved += r.energy_saved_total;
  }
  auto opt = [](std::optional<double> v) { return v ? fmt::format("{:.9f}", *v) : std::string("NA"); };
  const auto snap = snapshot(sim.state(), eco.price_quantum);
  std::int64_t clamps = 0;
  for (const auto& w : a.walks) clamps += w.clamp_events;

  a.summary = {
      {"version", kVersion},
      {"seed_derivation_version", std::to_string(kSeedDerivationVersion)},
      {"players", std::to_string(eco.num_players())},
      {"jobs", std::to_string(eco.num_jobs())},
      {"rounds", std::to_string(s.rounds)},
      {"autarky_energy", format_energy(autarky_energy(eco))},
      {"optimal_assignment_energy", format_energy(a.assignment.energy)},
      {"assignment_method", a.assignment_exhaustive ? "exhaustive" : "local_search"},
      {"offers", std::to_string(sim.market().offers().size())},
      {"total_trades", std::to_string(trades)},
      {"forced_self_productions", std::to_string(forced)},
      {"total_energy_saved", format_energy(saved)},
      {"final_gini", opt(try_metric([&] { return gini(wealth); }))},
      {"hill_alpha_top20", opt(try_metric([&] { return pareto_tail_fit(wealth, 0.2); }))},
      {"efficiency_wealth_rho", opt(try_metric([&] { return efficiency_wealth_correlation(snap, eco); }))},
      {"walk_clamp_events", std::to_string(clamps)},
  };
  return a;
}

inline bool wants(const ScenarioConfig& s, const std::string& output) {
  return std::find(s.outputs.begin(), s.outputs.end(), output) != s.outputs.end();
}

// Writes every selected artifact plus assignment.csv and summary.csv.
inline std::vector<std::filesystem::path> write_artifacts(const ScenarioConfig& s, const RunArtifacts& a,
                                                          const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir, "cannot create directory: " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const CsvTable& t, const char* name) {
    export_csv(t, dir / name);
    written.push_back(dir / name);
  };
  const auto& eco = a.economy;
  if (wants(s, "trades")) emit(trades_table(a.reports, eco), "trades.csv");
  if (wants(s, "wealth")) emit(wealth_table(a.states, eco.price_quantum), "wealth.csv");
  if (wants(s, "savings")) emit(savings_table(system_savings_series(a.reports)), "savings.csv");
  if (wants(s, "density")) {
    std::vector<std::pair<std::string, PriceDensity>> d;
    for (std::size_t x = 0; x < eco.num_jobs(); ++x)
      d.emplace_back(eco.jobs[x].id, build_price_density(break_even_prices(eco, x)));
    emit(density_table(d, eco.price_quantum), "density.csv");
  }
  if (wants(s, "walk")) emit(walk_table(a.walks), "walk.csv");
  emit(assignment_table(a.assignment, eco), "assignment.csv");
  CsvTable summary{{"metric", "value"}, {}};
  for (const auto& [k, v] : a.summary) summary.rows.push_back({k, v});
  emit(summary, "summary.csv");
  return written;
}

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the scenario's market and verifies, every round, the conservation
// ledger and individual rationality; then verifies that the free-energy
// variant and the identical-efficiency variant of the economy never trade.
inline std::vector<CheckLine> run_checks(const ScenarioConfig& s) {
  std::vector<CheckLine> out;
  const EconomyConfig eco = build_economy(s);
  Simulation sim(eco, s.master_seed);
  std::int64_t bad_conservation = 0, bad_rational = 0, bad_energy = 0, trades = 0;
  for (std::int64_t k = 0; k < s.rounds; ++k) {
    const auto r = sim.step();
    trades += static_cast<std::int64_t>(r.trades.size());
    if (!conservation_check(r, eco)) ++bad_conservation;
    if (!individually_rational(r, eco)) ++bad_rational;
    const bool energy_ok = r.trades.empty() ? r.energy_expended_total <= r.autarky_energy * (1 + 1e-9)
                                            : r.energy_expended_total < r.autarky_energy;
    if (!energy_ok) ++bad_energy;
  }
  out.push_back({"conservation", bad_conservation == 0,
                 fmt::format("{} of {} rounds violate the ledger", bad_conservation, s.rounds)});
  out.push_back({"individual_rationality", bad_rational == 0,
                 fmt::format("{} rounds with a trade at or above the buyer's self cost", bad_rational)});
  out.push_back({"system_energy", bad_energy == 0,
                 fmt::format("{} rounds where trading did not lower system energy ({} trades total)",
                             bad_energy, trades)});

  auto count_trades = [&](EconomyConfig variant) {
    Simulation v(std::move(variant), s.master_seed);
    std::int64_t n = 0;
    for (std::int64_t k = 0; k < s.rounds; ++k) n += static_cast<std::int64_t>(v.step().trades.size());
    return n;
  };
  EconomyConfig free_energy = eco;
  free_energy.energy_model = EnergyModel::free;
  const auto n_free = count_trades(free_energy);
  out.push_back({"no_trade_free_energy", n_free == 0, fmt::format("{} trades with zero-cost jobs", n_free)});

  EconomyConfig identical = eco;
  for (auto& p : identical.players) p.efficiencies = eco.players.front().efficiencies;
  const auto n_same = count_trades(identical);
  out.push_back(
      {"no_trade_identical_efficiency", n_same == 0, fmt::format("{} trades with identical efficiencies", n_same)});
  return out;
}

}  // namespace compadv
