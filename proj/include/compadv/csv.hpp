#pragma once

// CSV artifacts: comma separated, one header row, '\n' line endings, no
// locale. Prices carry exactly the quantum's decimal places, energies nine.
//
// Column order per file:
//   trades.csv     round,buyer,seller,job,units,price,buyer_self_cost,seller_cost,system_energy_saved
//   wealth.csv     round,player,money,energy_spent,energy_saved
//   savings.csv    round,autarky_energy,energy_expended,energy_saved,saved_fraction
//   density.csv    job,price,mass
//   walk.csv       step,walk_0,walk_1,...
//   assignment.csv job,producer,energy
//   summary.csv    metric,value

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "compadv/analysis.hpp"
#include "compadv/assignment.hpp"
#include "compadv/estimation.hpp"
#include "compadv/market.hpp"
#include "compadv/pricing.hpp"

namespace compadv {

using CsvRow = std::vector<std::string>;

struct CsvTable {
  CsvRow header;
  std::vector<CsvRow> rows;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Number of decimals needed to print multiples of `quantum` exactly (max 9).
inline int quantum_decimals(double quantum) {
  for (int d = 0; d < 9; ++d) {
    const double scaled = quantum * std::pow(10.0, d);
    if (std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, scaled)) return d;
  }
  return 9;
}

// Fixed-point text without a negative sign on values that round to zero.
inline std::string fixed(double v, int decimals) {
  std::string s = fmt::format("{:.{}f}", v, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string format_energy(double v) { return fixed(v, 9); }

class PriceFormat {
 public:
  explicit PriceFormat(double quantum) : quantum_(quantum), decimals_(quantum_decimals(quantum)) {}
  std::string operator()(Money m) const { return fixed(m.value(quantum_), decimals_); }
  std::string operator()(double price) const { return fixed(price, decimals_); }

 private:
  double quantum_;
  int decimals_;
};

inline void export_csv(const CsvTable& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  auto line = [&](const CsvRow& r) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) out << ',';
      out << r[k];
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

inline CsvTable trades_table(std::span<const RoundReport> reports, const EconomyConfig& cfg) {
  const PriceFormat price(cfg.price_quantum);
  CsvTable t{{"round", "buyer", "seller", "job", "units", "price", "buyer_self_cost", "seller_cost",
              "system_energy_saved"},
             {}};
  for (const auto& r : reports)
    for (const auto& tr : r.trades)
      t.rows.push_back({std::to_string(r.round), cfg.players[tr.buyer].id, cfg.players[tr.seller].id,
                        cfg.jobs[tr.job].id, std::to_string(tr.units), price(tr.price),
                        format_energy(tr.buyer_self_cost), format_energy(tr.seller_cost),
                        format_energy(tr.system_energy_saved)});
  return t;
}

// One row per player per recorded state.
inline CsvTable wealth_table(std::span<const MarketState> states, double quantum) {
  const PriceFormat price(quantum);
  CsvTable t{{"round", "player", "money", "energy_spent", "energy_saved"}, {}};
  for (const auto& s : states)
    for (const auto& p : s.players)
      t.rows.push_back({std::to_string(s.round), p.id, price(p.money), format_energy(p.energy_spent),
                        format_energy(p.energy_saved)});
  return t;
}

inline CsvTable savings_table(std::span<const SavingsPoint> series) {
  CsvTable t{{"round", "autarky_energy", "energy_expended", "energy_saved", "saved_fraction"}, {}};
  for (const auto& s : series)
    t.rows.push_back({std::to_string(s.round), format_energy(s.autarky), format_energy(s.expended),
                      format_energy(s.saved), format_energy(s.saved_fraction)});
  return t;
}

// Population break-even price densities, one block of atoms per job.
inline CsvTable density_table(const std::vector<std::pair<std::string, PriceDensity>>& densities,
                              double quantum) {
  const PriceFormat price(quantum);
  CsvTable t{{"job", "price", "mass"}, {}};
  for (const auto& [job, d] : densities)
    for (const auto& a : d.atoms) t.rows.push_back({job, price(a.price), std::to_string(a.mass)});
  return t;
}

inline CsvTable walk_table(std::span<const WalkTrace> traces) {
  CsvTable t{{"step"}, {}};
  for (std::size_t k = 0; k < traces.size(); ++k) t.header.push_back(fmt::format("walk_{}", k));
  const std::size_t len = traces.empty() ? 0 : traces.front().values.size();
  for (std::size_t s = 0; s < len; ++s) {
    CsvRow r{std::to_string(s)};
    for (const auto& tr : traces) r.push_back(format_energy(tr.values[s]));
    t.rows.push_back(std::move(r));
  }
  return t;
}

inline CsvTable assignment_table(const AssignmentResult& a, const EconomyConfig& cfg) {
  const AssignmentCostMatrix m(cfg);
  CsvTable t{{"job", "producer", "energy"}, {}};
  for (std::size_t x = 0; x < cfg.num_jobs(); ++x) {
    const auto i = a.assignment.producer_of[x];
    t.rows.push_back({cfg.jobs[x].id, cfg.players[i].id, format_energy(m(x, i))});
  }
  return t;
}

}  // namespace compadv
