// Batch front end for the robust symbol-level precoding experiments.
//
// Usage: slpcli <command> <config> <outdir>
// Commands: power-sweep, ser, feasibility, benchmark, tightness, validate.
// Exit codes: 0 success, 2 config validation error, 3 I/O error,
// 4 internal solver failure.
//
// The only environment variable consulted is SLPCLI_VERBOSE (progress notes
// on stderr when set to a nonempty value).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "slpkit/configfile.hpp"
#include "slpkit/report.hpp"
#include "slpkit/simkit.hpp"

namespace fs = std::filesystem;
using namespace slp;

namespace {

bool verbose_enabled() {
  const char* v = std::getenv("SLPCLI_VERBOSE");
  return v != nullptr && v[0] != '\0';
}

void note(const std::string& msg) {
  if (verbose_enabled()) std::cerr << "slpcli: " << msg << "\n";
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

std::vector<double> tightness_grid(const KeyValues& kv) {
  const auto it = kv.find("sweep.upsilon");
  if (it == kv.end()) throw ConfigError("sweep.upsilon", "required key is missing");
  std::vector<double> grid;
  std::istringstream iss(it->second);
  std::string tok;
  while (iss >> tok) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("trailing characters");
      grid.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("sweep.upsilon", "expected a number, got '" + tok + "'");
    }
  }
  for (double u : grid) {
    if (!(u > 0.0 && u <= 0.5)) {
      throw ConfigError("sweep.upsilon", "violation probability must lie in (0, 1/2]");
    }
  }
  if (grid.empty()) throw ConfigError("sweep.upsilon", "grid is empty");
  return grid;
}

struct RunPaths {
  fs::path csv;
  fs::path json;
  fs::path manifest;
};

RunPaths emit_report(const MetricsReport& report, const std::string& command,
                     const fs::path& outdir) {
  RunPaths paths;
  paths.csv = outdir / (command + ".csv");
  paths.json = outdir / (command + ".json");
  paths.manifest = outdir / "manifest.json";
  std::ostringstream csv;
  write_csv(report, csv);
  write_atomic(paths.csv, csv.str());
  std::ostringstream json;
  write_json(report, json);
  write_atomic(paths.json, json.str());
  return paths;
}

void emit_manifest(const RunPaths& paths, const std::string& command,
                   const std::string& config_path, const KeyValues& kv, double wall_seconds,
                   std::int64_t started_unix_ms) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["version"] = kVersion;
  doc["config_path"] = config_path;
  doc["config_hash"] = config_hash(kv);
  nlohmann::ordered_json resolved;
  for (const auto& [key, value] : kv) resolved[key] = value;
  doc["resolved_config"] = std::move(resolved);
  doc["outputs"] = {paths.csv.string(), paths.json.string()};
  doc["started_unix_ms"] = started_unix_ms;
  doc["wall_seconds"] = wall_seconds;
  write_atomic(paths.manifest, doc.dump(2) + "\n");
}

int run_command(const std::string& command, const std::string& config_path,
                const std::string& outdir_str) {
  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();

  const KeyValues kv = parse_config_file(config_path);
  const fs::path outdir(outdir_str);
  if (!fs::is_directory(outdir)) {
    throw IoError("output directory does not exist: " + outdir_str);
  }

  MetricsReport report;
  if (command == "tightness") {
    report = tightness_report(tightness_grid(kv));
    report.config_hash = config_hash(kv);
  } else {
    const ScenarioConfig cfg = scenario_from_config(kv);
    note("running " + command + " with config hash " + cfg.config_hash);
    if (command == "power-sweep") {
      report = run_power_sweep(cfg);
    } else if (command == "ser") {
      report = run_ser(cfg);
    } else if (command == "feasibility") {
      report = run_feasibility(cfg, cfg.feasibility_axis == "xi2"
                                        ? FeasibilityAxis::Variance
                                        : FeasibilityAxis::ViolationProb);
    } else if (command == "benchmark") {
      report = benchmark_runtime(cfg);
    } else {
      report = run_validate(cfg);
    }
  }

  const RunPaths paths = emit_report(report, command, outdir);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_manifest(paths, command, config_path, kv, wall,
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    started.time_since_epoch())
                    .count());
  note("wrote " + paths.csv.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust symbol-level precoding experiment runner"};
  app.require_subcommand(1);

  static const std::vector<std::string> kCommands = {"power-sweep", "ser",      "feasibility",
                                                     "benchmark",   "tightness", "validate"};
  std::string config_path;
  std::string outdir;
  for (const std::string& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "scenario config file")->required();
    sub->add_option("outdir", outdir, "existing output directory")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run_command(command, config_path, outdir);
  } catch (const ConfigError& e) {
    std::cerr << "slpcli: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "slpcli: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "slpcli: I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "slpcli: internal error: " << e.what() << "\n";
    return 4;
  }
}
