// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "compadv/analysis.hpp"
#include "compadv/assignment.hpp"
#include "compadv/estimation.hpp"
#include "compadv/market.hpp"
#include "compadv/pricing.hpp"
#include "compadv/runner.hpp"
#include "compadv/scenario.hpp"
#include "support.hpp"

using namespace compadv;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail, double seconds) {
  std::printf("%s %d %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void criterion(int id, const char* name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(id, name, ok, detail,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

bool conservation(std::string& detail) {
  Rng rng(derive_seed(1, "acceptance", 1));
  std::int64_t rounds = 0, bad = 0, trades = 0;
  for (int k = 0; k < 100; ++k) {
    const auto cfg = testing::random_economy(rng, 2 + rng.next() % 99, 1 + rng.next() % 20);
    Simulation sim(cfg, rng.next());
    for (int r = 0; r < 100; ++r) {
      const auto rep = sim.step();
      ++rounds;
      trades += static_cast<std::int64_t>(rep.trades.size());
      if (!conservation_check(rep, cfg) || rep.money_delta_total != Money{}) ++bad;
    }
  }
  detail = fmt::format("{} rounds, {} trades, {} violations", rounds, trades, bad);
  return bad == 0 && trades > 0;
}

bool no_trade(std::string& detail) {
  Rng rng(derive_seed(1, "acceptance", 2));
  std::int64_t trades = 0, economies = 0;
  for (int k = 0; k < 50; ++k) {
    auto cfg = testing::random_economy(rng, 2 + rng.next() % 60, 1 + rng.next() % 12);
    auto same = cfg;
    cfg.energy_model = EnergyModel::free;
    for (auto& p : same.players) p.efficiencies = same.players.front().efficiencies;
    for (const auto* c : {&cfg, &same}) {
      ++economies;
      for (int s = 0; s < 3; ++s) {
        Simulation sim(*c, rng.next());
        for (const auto& r : sim.run(20)) trades += static_cast<std::int64_t>(r.trades.size());
      }
    }
  }
  detail = fmt::format("{} economies x 3 seeds x 20 rounds, {} trades", economies, trades);
  return trades == 0;
}

bool assignment(std::string& detail) {
  Rng rng(derive_seed(1, "acceptance", 3));
  int mismatches = 0, not_stationary = 0;
  for (int k = 0; k < 100; ++k) {
    const auto cfg = testing::random_economy(rng, 1 + rng.next() % 6, 1 + rng.next() % 6);
    const double opt = optimal_assignment(cfg).energy;
    if (opt != brute_force_min_assignment(cfg).energy) ++mismatches;
    if (std::abs(opt - testing::oracle_min_energy(cfg)) > 1e-9 * std::max(1.0, opt)) ++mismatches;
  }
  for (int k = 0; k < 20; ++k) {
    const auto cfg = testing::random_economy(rng, 20 + rng.next() % 81, 8 + rng.next() % 13);
    if (!stationarity_check(optimal_assignment(cfg).assignment, cfg)) ++not_stationary;
  }
  detail = fmt::format("100 small instances, {} mismatches; 20 large, {} not stationary", mismatches,
                       not_stationary);
  return mismatches == 0 && not_stationary == 0;
}

bool pricing(std::string& detail) {
  Rng rng(derive_seed(1, "acceptance", 4));
  int mismatches = 0;
  for (int k = 0; k < 200; ++k) {
    const double quantum = (k % 2) ? 0.01 : 0.5;
    std::vector<double> costs(1 + rng.next() % 30);
    for (auto& c : costs) c = (rng.next() % 2) ? std::round(rng.uniform(0, 20) / quantum) * quantum : rng.uniform(0, 20);
    const double be = rng.uniform(0, 15);
    const auto scan = testing::oracle_scan(costs, be, quantum);
    const auto s = optimal_price(be, build_price_density(costs), quantum);
    if (s.profit != std::max(0.0, scan.profit)) ++mismatches;
  }
  detail = fmt::format("200 densities, {} mismatches", mismatches);
  return mismatches == 0;
}

bool identities(std::string& detail) {
  Rng rng(derive_seed(1, "acceptance", 5));
  std::int64_t cases = 0, bad = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> costs(1 + rng.next() % 50);
    for (auto& c : costs) c = std::round(rng.uniform(0, 30) * 2) / 2;
    const auto d = build_price_density(costs);
    const auto n = static_cast<std::int64_t>(costs.size());
    if (total_mass(d) != n) ++bad;
    std::int64_t prev = n;
    for (double p = -0.25; p <= d.p_max() + 0.5; p += 0.25) {
      ++cases;
      const auto b = buyer_count(d, p);
      if (b + mass_at_or_below(d, p) != n || b > prev || b != testing::oracle_buyers(costs, p)) ++bad;
      prev = b;
    }
  }
  detail = fmt::format("{} (density, price) cases, {} violations", cases, bad);
  return bad == 0 && cases >= 1000;
}

bool rationality(std::string& detail) {
  Rng rng(derive_seed(1, "acceptance", 6));
  std::int64_t trades = 0, irrational = 0, energy_bad = 0;
  for (int k = 0; k < 50; ++k) {
    const auto cfg = testing::random_economy(rng, 2 + rng.next() % 99, 1 + rng.next() % 20);
    Simulation sim(cfg, rng.next());
    for (const auto& r : sim.run(50)) {
      for (const auto& t : r.trades) {
        ++trades;
        if (!(t.price.value(cfg.price_quantum) < cfg.conversion * t.buyer_self_cost)) ++irrational;
      }
      const bool ok = r.trades.empty() ? r.energy_expended_total <= r.autarky_energy * (1 + 1e-12)
                                       : r.energy_expended_total < r.autarky_energy;
      if (!ok) ++energy_bad;
    }
  }
  detail = fmt::format("{} trades, {} irrational, {} rounds with excess energy", trades, irrational, energy_bad);
  return trades > 0 && irrational == 0 && energy_bad == 0;
}

bool concentration(std::string& detail) {
  ScenarioConfig s;
  s.population = PopulationGenerator{100, EfficiencyFamily::uniform, {{"low", 0.5}, {"high", 2.0}}};
  for (int x = 1; x <= 20; ++x) s.jobs.push_back({fmt::format("J{:02}", x), 10.0});
  s.conversion = 1.0;
  s.price_quantum = 0.01;
  s.rounds = 500;
  s.master_seed = 20240601;
  s.initial_money = 1e6;
  const auto eco = build_economy(s);
  Simulation sim(eco, s.master_seed);
  sim.run(static_cast<std::size_t>(s.rounds));
  std::vector<double> wealth;
  for (const auto& p : sim.state().players) wealth.push_back(p.money.value(eco.price_quantum));
  const double g = gini(wealth);
  const double rho = efficiency_wealth_correlation(snapshot(sim.state(), eco.price_quantum), eco);

  bool hill_ok = true;
  std::string hill;
  for (double alpha : {1.5, 2.0, 3.0}) {
    Rng rng(derive_seed(1, "acceptance-hill", static_cast<std::uint64_t>(alpha * 10)));
    std::vector<double> w(10000);
    for (auto& v : w) v = rng.pareto(1.0, alpha);
    const double a = pareto_tail_fit(w, 0.2);
    hill_ok = hill_ok && std::abs(a - alpha) <= 0.15 * alpha;
    hill += fmt::format(" alpha {}->{:.3f}", alpha, a);
  }
  detail = fmt::format("gini {:.4f} (> 0), rho {:.4f} (>= 0.8), hill{}", g, rho, hill);
  return g > 0.0 && rho >= 0.8 && hill_ok;
}

bool walk(std::string& detail) {
  bool ok = true;
  for (double eta : {0.1, 0.5, 1.0}) {
    const WalkParams p{100.0, eta, 10.0};
    const auto t = simulate_walk(p, p.true_price, 1'000'000, derive_seed(1, "walk", static_cast<std::uint64_t>(eta * 10)));
    double sum = 0.0, sq = 0.0;
    for (std::size_t k = 1; k < t.values.size(); ++k) sum += t.values[k];
    const double n = static_cast<double>(t.values.size() - 1);
    const double mean = sum / n;
    for (std::size_t k = 1; k < t.values.size(); ++k) sq += (t.values[k] - mean) * (t.values[k] - mean);
    const double var = sq / n;
    const auto st = stationary_stats(p);
    const bool m_ok = std::abs(mean - st.mean) <= 0.01 * st.mean;
    const bool v_ok = std::abs(var - st.variance) <= 0.10 * st.variance;
    ok = ok && m_ok && v_ok;
    detail += fmt::format("{}eta {}: mean {:.3f}/{:.1f}, var {:.2f}/{:.2f}", detail.empty() ? "" : "; ", eta, mean,
                          st.mean, var, st.variance);
  }
  return ok;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool determinism(std::string& detail) {
  auto s = parse_config(R"(population:
  generator: {count: 60, distribution: pareto, scale: 0.5, shape: 2}
jobs:
  - {id: a, workload: 4}
  - {id: b, workload: 9}
  - {id: c, workload: 1.5}
  - {id: d, workload: 12}
conversion: 1.25
price_quantum: 0.01
demand: 2
rounds: 100
master_seed: 8675309
outputs: [trades, wealth, savings, density, walk]
walk: {true_price: 50, eta: 0.3, sigma: 5, steps: 2000, traces: 3}
)",
                        "acceptance");
  const auto root = std::filesystem::temp_directory_path() / "compadv_acceptance";
  std::filesystem::remove_all(root);
  const auto a = write_artifacts(s, simulate_scenario(s), root / "a");
  write_artifacts(s, simulate_scenario(s), root / "b");
  int differ = 0;
  std::size_t bytes = 0;
  for (const auto& f : a) {
    const auto x = slurp(f);
    bytes += x.size();
    if (x != slurp(root / "b" / f.filename())) ++differ;
  }
  std::filesystem::remove_all(root);
  detail = fmt::format("{} files, {} bytes, {} differ", a.size(), bytes, differ);
  return differ == 0 && a.size() == 7;
}

}  // namespace

int main() {
  criterion(1, "conservation", conservation);
  criterion(2, "no_trade", no_trade);
  criterion(3, "assignment_oracle", assignment);
  criterion(4, "pricing_oracle", pricing);
  criterion(5, "buyer_count_identities", identities);
  criterion(6, "individual_rationality", rationality);
  criterion(7, "wealth_concentration", concentration);
  criterion(8, "estimation_walk", walk);
  criterion(9, "determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
