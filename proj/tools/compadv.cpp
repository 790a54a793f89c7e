// compadv: run a comparative-advantage market scenario and write CSV
// artifacts, or audit it with --check.
//
// Exit status: 0 success, 1 a --check property failed, 2 configuration
// error, 3 runtime error (capacity, domain, I/O). Errors are also emitted as
// one JSON object on stderr and, when an output directory is known, as
// error.json.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "compadv/runner.hpp"

namespace {

using nlohmann::json;

void emit_error(const json& record, const std::optional<std::filesystem::path>& out_dir) {
  std::cerr << record.dump() << '\n';
  if (!out_dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*out_dir, ec);
  std::ofstream f(*out_dir / "error.json", std::ios::binary | std::ios::trunc);
  if (f) f << record.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparative-advantage market simulator"};
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  int verbosity = 0;
  bool check = false;
  bool print_config = false;

  app.add_option("config", config_path, "Scenario file (YAML)")->required();
  app.add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("-s,--seed", seed, "Override the scenario's master_seed");
  app.add_flag("-v,--verbose", verbosity, "Increase log verbosity (repeatable)");
  app.add_flag("--check", check, "Run conservation and no-trade property suites; exit nonzero on violation");
  app.add_flag("--print-config", print_config, "Print the validated scenario in canonical form and exit");
  app.set_version_flag("--version", compadv::kVersion);
  CLI11_PARSE(app, argc, argv);

  compadv::ScenarioConfig cfg;
  try {
    cfg = compadv::load_config(config_path);
  } catch (const compadv::ConfigError& e) {
    json issues = json::array();
    for (const auto& i : e.issues()) issues.push_back({{"path", i.path}, {"line", i.line}, {"message", i.message}});
    emit_error({{"error", compadv::ConfigError::kind_name(e.kind())}, {"file", e.file()}, {"issues", issues}},
               std::nullopt);
    if (verbosity > 0) std::cerr << e.what() << '\n';
    return 2;
  }
  if (seed) cfg.master_seed = *seed;

  if (print_config) {
    std::cout << compadv::serialize_config(cfg);
    return 0;
  }

  const compadv::Logger log = [&](const std::string& m) {
    if (verbosity > 0) std::cerr << "[compadv] " << m << '\n';
  };

  try {
    if (check) {
      bool ok = true;
      for (const auto& line : compadv::run_checks(cfg)) {
        std::cout << (line.passed ? "PASS " : "FAIL ") << line.name << ": " << line.detail << '\n';
        ok = ok && line.passed;
      }
      return ok ? 0 : 1;
    }
    const auto artifacts = compadv::simulate_scenario(cfg, log);
    const auto written = compadv::write_artifacts(cfg, artifacts, out_dir);
    for (const auto& p : written) log("wrote " + p.string());
    if (verbosity > 0)
      for (const auto& [k, v] : artifacts.summary) std::cerr << "  " << k << " = " << v << '\n';
  } catch (const compadv::CapacityError& e) {
    emit_error({{"error", "capacity_error"}, {"message", e.what()}}, out_dir);
    return 3;
  } catch (const compadv::DomainError& e) {
    emit_error({{"error", "domain_error"}, {"message", e.what()}}, out_dir);
    return 3;
  } catch (const compadv::StructuralError& e) {
    emit_error({{"error", "structural_error"}, {"message", e.what()}}, out_dir);
    return 3;
  } catch (const compadv::IoError& e) {
    emit_error({{"error", "io_error"}, {"path", e.path().string()}, {"message", e.what()}}, std::nullopt);
    return 3;
  }
  return 0;
}
