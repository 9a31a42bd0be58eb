#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>
#include <openssl/sha.h>

#include "CLI11.hpp"
#include "fkmc/config.hpp"
#include "fkmc/features.hpp"
#include "fkmc/logio.hpp"
#include "fkmc/replay.hpp"
#include "fkmc/world.hpp"

namespace fkmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

struct SimulateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool header = true;
};

struct FeaturesOptions {
  std::string log;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

inline std::string sha1_hex(const std::string& text) {
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  for (unsigned char c : digest) {
    s += kHex[c >> 4];
    s += kHex[c & 0xF];
  }
  return s;
}

inline std::string meta_path(const std::string& log_path) { return log_path + ".meta.json"; }

namespace detail {

// Loads a config, reporting problems on `err`. Returns the exit code on failure.
inline std::optional<int> load(const std::string& path, SimulationConfig& cfg, std::ostream& err) {
  try {
    cfg = parse_config(path);
  } catch (const ConfigIoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  return std::nullopt;
}

inline bool report_violations(const SimulationConfig& cfg, std::ostream& err) {
  const auto violations = validate_config(cfg);
  for (const auto& v : violations) err << "violation [" << v.code << "] " << v.message << "\n";
  return violations.empty();
}

}  // namespace detail

// Writes the event log and `<out>.meta.json`. The sidecar embeds the
// effective config (seed override applied), so it alone reproduces the run.
inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  SimulationConfig cfg;
  if (auto code = detail::load(opt.config, cfg, err)) return *code;
  if (opt.seed) cfg.seed = *opt.seed;
  if (!detail::report_violations(cfg, err)) return kExitInvalid;

  std::ofstream log(opt.out, std::ios::binary | std::ios::trunc);
  if (!log) {
    err << "error: cannot open " << opt.out << " for writing\n";
    return kExitIo;
  }

  const auto started = std::chrono::steady_clock::now();
  RunSummary summary;
  std::uint64_t rows = 0;
  try {
    LogWriter writer(log, cfg.epoch, opt.header);
    summary = simulate(cfg, [&](const LogRecord& r) { writer.append(r); });
    writer.flush();
    rows = writer.rows();
  } catch (const LogIoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  log.close();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (summary.termination == Termination::no_enabled_events) err << "warning: stopped early: " << summary.diagnostic << "\n";

  const auto config_json = to_json(cfg);
  const nlohmann::json meta = {
      {"seed", cfg.seed},
      {"config_sha1", sha1_hex(config_json.dump())},
      {"record_count", rows},
      {"steps", summary.steps},
      {"termination", to_string(summary.termination)},
      {"final_sim_time_days", summary.final_time},
      {"wall_time_seconds", wall},
      {"header", opt.header},
      {"config", config_json},
  };
  std::ofstream sidecar(meta_path(opt.out), std::ios::binary | std::ios::trunc);
  sidecar << meta.dump(2) << "\n";
  if (!sidecar) {
    err << "error: cannot write " << meta_path(opt.out) << "\n";
    return kExitIo;
  }
  out << "wrote " << rows << " records to " << opt.out << " (seed " << cfg.seed << ")\n";
  return kExitOk;
}

// Labels come from the population the run started with, rebuilt from the
// config and seed. The seed is taken from --seed, else from the log's
// sidecar if present, else from the config. With arrivals enabled the run is
// replayed to recover the late joiners.
inline int cmd_features(const FeaturesOptions& opt, std::ostream& out, std::ostream& err) {
  SimulationConfig cfg;
  if (auto code = detail::load(opt.config, cfg, err)) return *code;
  if (opt.seed) {
    cfg.seed = *opt.seed;
  } else if (std::ifstream meta(meta_path(opt.log)); meta) {
    try {
      cfg.seed = nlohmann::json::parse(meta).at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      err << "error: unreadable sidecar " << meta_path(opt.log) << ": " << e.what() << "\n";
      return kExitInvalid;
    }
  }
  if (!detail::report_violations(cfg, err)) return kExitInvalid;

  std::ifstream in(opt.log, std::ios::binary);
  if (!in) {
    err << "error: cannot open log " << opt.log << "\n";
    return kExitIo;
  }
  std::vector<FeatureRow> rows;
  try {
    const auto entries = read_log(in);
    rows = extract_features(entries);
    std::vector<Agent> population;
    if (cfg.new_customer_rate > 0.0) {
      simulate(cfg, [](const LogRecord&) {}, &population);
    } else {
      population = initial_population(cfg);
    }
    attach_labels(rows, label_table(population));
  } catch (const LogFormatError& e) {
    err << "error: " << opt.log << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const LabelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open " << opt.out << " for writing\n";
    return kExitIo;
  }
  try {
    write_features_csv(file, rows);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  out << "wrote " << rows.size() << " feature rows to " << opt.out << "\n";
  return kExitOk;
}

inline int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err) {
  SimulationConfig cfg;
  if (auto code = detail::load(config_path, cfg, err)) return *code;
  if (!detail::report_violations(cfg, err)) return kExitInvalid;
  out << config_path << ": ok (" << cfg.population_size() << " agents)\n";
  return kExitOk;
}

/// Replays a log against its config and reports ledger violations.
inline int cmd_check(const FeaturesOptions& opt, std::ostream& out, std::ostream& err) {
  SimulationConfig cfg;
  if (auto code = detail::load(opt.config, cfg, err)) return *code;
  if (opt.seed) cfg.seed = *opt.seed;
  if (!detail::report_violations(cfg, err)) return kExitInvalid;
  std::ifstream in(opt.log, std::ios::binary);
  if (!in) {
    err << "error: cannot open log " << opt.log << "\n";
    return kExitIo;
  }
  try {
    const auto entries = read_log(in);
    std::vector<Agent> population;
    simulate(cfg, [](const LogRecord&) {}, &population);
    const auto report = replay_log(entries, population, cfg);
    for (const auto& v : report.violations) err << v << "\n";
    if (!report.ok()) return kExitInvalid;
    out << opt.log << ": " << entries.size() << " records replayed cleanly\n";
  } catch (const LogFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Agent-based kinetic Monte Carlo simulator for synthetic fintech activity logs"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a scenario and write the event log");
  simulate_cmd->add_option("--config", sim.config, "Scenario JSON")->required();
  simulate_cmd->add_option("--seed", sim.seed, "Override the config seed");
  simulate_cmd->add_option("--out", sim.out, "Output CSV path")->required();
  bool no_header = false;
  simulate_cmd->add_flag("--no-header", no_header, "Omit the CSV header row");

  FeaturesOptions feat;
  auto* features_cmd = app.add_subcommand("features", "Build the per-agent feature table from a log");
  features_cmd->add_option("--log", feat.log, "Event log CSV")->required();
  features_cmd->add_option("--config", feat.config, "Scenario JSON used to produce the log")->required();
  features_cmd->add_option("--out", feat.out, "Output feature CSV")->required();
  features_cmd->add_option("--seed", feat.seed, "Seed of the run (default: sidecar, then config)");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("--config", validate_path, "Scenario JSON")->required();

  FeaturesOptions check;
  auto* check_cmd = app.add_subcommand("check", "Replay a log and verify balances and gating rules");
  check_cmd->add_option("--log", check.log, "Event log CSV")->required();
  check_cmd->add_option("--config", check.config, "Scenario JSON")->required();
  check_cmd->add_option("--seed", check.seed, "Override the config seed");

  std::string baseline_out;
  auto* baseline_cmd = app.add_subcommand("baseline", "Print the shipped baseline scenario");
  baseline_cmd->add_option("--out", baseline_out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*simulate_cmd) {
    sim.header = !no_header;
    return cmd_simulate(sim, out, err);
  }
  if (*features_cmd) return cmd_features(feat, out, err);
  if (*validate_cmd) return cmd_validate(validate_path, out, err);
  if (*check_cmd) return cmd_check(check, out, err);
  if (*baseline_cmd) {
    const std::string text = serialize_config(baseline_scenario());
    if (baseline_out.empty()) {
      out << text;
      return kExitOk;
    }
    std::ofstream f(baseline_out, std::ios::binary | std::ios::trunc);
    f << text;
    return f ? kExitOk : kExitIo;
  }
  return kExitInvalid;
}

}  // namespace fkmc::cli
