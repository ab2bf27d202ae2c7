// qwalk: runs hypercube quantum-walk experiments and writes CSV.
//
// Exit codes: 0 success, 1 a verify check failed, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qwalk/experiments.hpp"

namespace {

using namespace qwalk;
using namespace qwalk::experiments;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config;
  std::optional<int> n;
  std::optional<std::string> n_range;
  std::optional<std::string> engine;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> horizon;
  std::optional<double> window_beta;
  bool sqrt_window = false;
  std::optional<double> target_success;
  std::optional<std::int64_t> trials;
  std::optional<int> mc_max_n;
  std::optional<int> max_distance;
  std::optional<std::string> source;
  std::optional<std::string> destination;
  std::optional<std::string> mode;
  std::optional<int> random_edges;
  std::optional<int> random_interceptors;
  std::optional<int> seeds;
  bool tamper_coin = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config; flags override its fields");
  auto* n = cmd->add_option("--n", f.n, "single cube dimension");
  cmd->add_option("--n-range", f.n_range, "dimensions: a..b, a..b:step, a..b:xk, comma lists")->excludes(n);
  cmd->add_option("--engine", f.engine, "direct or analytic")->check(CLI::IsMember({"direct", "analytic"}));
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv"}));
}

ExperimentConfig resolve(ExperimentKind kind, const Flags& f) {
  ExperimentConfig c;
  c.kind = kind;
  if (!f.config.empty()) {
    c = load_config(f.config, c);
    const bool compatible = c.kind == kind || (kind == ExperimentKind::oneshot && c.kind == ExperimentKind::oneshot_window);
    if (!compatible) c.kind = kind;
  }
  if (f.n) c.n_range_text = std::to_string(*f.n);
  if (f.n_range) c.n_range_text = *f.n_range;
  if (f.engine) c.engine = parse_engine(*f.engine);
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  if (f.format) c.format = *f.format;
  if (f.horizon) c.horizon = *f.horizon;
  if (f.window_beta) c.window_beta = *f.window_beta;
  if (f.sqrt_window) c.sqrt_window = true;
  if (f.target_success) c.target_success = *f.target_success;
  if (f.trials) c.trials = *f.trials;
  if (f.mc_max_n) c.monte_carlo_max_n = *f.mc_max_n;
  if (f.max_distance) c.max_distance = *f.max_distance;
  if (f.source) c.source = *f.source;
  if (f.destination) c.destination = *f.destination;
  if (f.mode) {
    try {
      c.mode = parse_routing_mode(*f.mode);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (f.random_edges) c.random_edges = *f.random_edges;
  if (f.random_interceptors) c.random_interceptors = *f.random_interceptors;
  if (f.seeds) c.seeds = *f.seeds;
  if (kind == ExperimentKind::neighborhood && !f.engine && f.config.empty()) c.engine = Engine::direct;
  if (kind == ExperimentKind::routing && !f.engine && f.config.empty()) c.engine = Engine::direct;
  validate(c);
  return c;
}

int run(ExperimentKind kind, const Flags& f) {
  const ExperimentConfig config = resolve(kind, f);
  const auto [table, passed] = run_experiment(config, f.tamper_coin);
  if (config.out.empty()) {
    write_csv(std::cout, table);
  } else {
    std::ofstream file(config.out);
    if (!file) throw ConfigError("cannot write '" + config.out + "'");
    write_csv(file, table);
  }
  if (kind == ExperimentKind::verify) {
    std::size_t ok = 0;
    for (const auto& row : table.rows) ok += row[table.column("status")] == "PASS";
    std::cerr << "verify: " << ok << "/" << table.rows.size() << " checks passed\n";
  }
  return passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercube quantum-walk experiments"};
  app.require_subcommand(1);
  Flags f;

  auto* oneshot = app.add_subcommand("oneshot", "one-shot corner-to-corner hitting probability");
  add_common(oneshot, f);
  oneshot->add_option("--horizon", f.horizon, "explicit T");
  oneshot->add_option("--window-beta", f.window_beta, "also scan T within pi n/2 +- n^beta");
  oneshot->add_flag("--sqrt-window", f.sqrt_window, "also scan T within pi n/2 +- sqrt(n)/ln n");

  auto* concurrent = app.add_subcommand("concurrent", "target-measured walk hitting probability");
  add_common(concurrent, f);
  concurrent->add_option("--horizon", f.horizon, "explicit T");
  concurrent->add_option("--target-success", f.target_success, "success level for the resend count");

  auto* continuous = app.add_subcommand("continuous", "continuous-time walk measured at integer times");
  add_common(continuous, f);
  continuous->add_option("--horizon", f.horizon, "explicit T");

  auto* classical = app.add_subcommand("classical", "classical random-walk hitting times");
  add_common(classical, f);
  classical->add_option("--trials", f.trials, "Monte Carlo trials per n");
  classical->add_option("--mc-max-n", f.mc_max_n, "largest n for Monte Carlo columns");
  classical->add_option("--target-success", f.target_success, "success level for the quantum cost");

  auto* neighborhood = app.add_subcommand("neighborhood", "starts near the corner, direct engine");
  add_common(neighborhood, f);
  neighborhood->add_option("--horizon", f.horizon, "explicit T");
  neighborhood->add_option("--max-distance", f.max_distance, "largest start distance");

  auto* routing = app.add_subcommand("routing", "packet routing on the sub-cube");
  add_common(routing, f);
  routing->add_option("--source", f.source, "source bitstring");
  routing->add_option("--destination", f.destination, "destination bitstring");
  routing->add_option("--mode", f.mode, "oneshot or concurrent");
  routing->add_option("--random-edges", f.random_edges, "random deleted edges per seed");
  routing->add_option("--random-interceptors", f.random_interceptors, "random intercepting nodes per seed");
  routing->add_option("--seeds", f.seeds, "number of seeds (seed, seed+1, ...)");
  routing->add_option("--target-success", f.target_success, "success level for the resend count");

  auto* verify = app.add_subcommand("verify", "cross-engine and invariant checks");
  add_common(verify, f);
  verify->add_flag("--tamper-coin", f.tamper_coin, "negate one coin column (mutation test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::pair<CLI::App*, ExperimentKind> commands[] = {
      {oneshot, ExperimentKind::oneshot},          {concurrent, ExperimentKind::concurrent},
      {continuous, ExperimentKind::continuous},    {classical, ExperimentKind::classical},
      {neighborhood, ExperimentKind::neighborhood}, {routing, ExperimentKind::routing},
      {verify, ExperimentKind::verify},
  };
  try {
    for (const auto& [cmd, kind] : commands) {
      if (cmd->parsed()) return run(kind, f);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfig;
}
