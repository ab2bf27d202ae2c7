#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qwalk/classical.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/measured_walk.hpp"
#include "qwalk/routing.hpp"

namespace qwalk::experiments {

/// Bad user input: unknown keys, malformed ranges, engine limits. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { oneshot, oneshot_window, concurrent, continuous, classical, neighborhood, routing, verify };

inline constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::oneshot, "oneshot"},           {ExperimentKind::oneshot_window, "oneshot-window"},
    {ExperimentKind::concurrent, "concurrent"},     {ExperimentKind::continuous, "continuous"},
    {ExperimentKind::classical, "classical"},       {ExperimentKind::neighborhood, "neighborhood"},
    {ExperimentKind::routing, "routing"},           {ExperimentKind::verify, "verify"},
};

inline std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

inline ExperimentKind parse_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

/// Largest n accepted by any experiment; the analytic recursion is O(n^2) per run.
inline constexpr int kMaxExperimentDimension = 10000;

namespace detail {

inline int parse_int(std::string_view text) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

/// n-range syntax: comma-separated items, each "a", "a..b", "a..b:step" or
/// "a..b:xk" (geometric, factor k).
inline std::vector<int> parse_n_range(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(detail::parse_int(item));
      continue;
    }
    const int lo = detail::parse_int(item.substr(0, dots));
    std::string_view rest = item.substr(dots + 2);
    const auto colon = rest.find(':');
    const int hi = detail::parse_int(rest.substr(0, colon));
    int step = 1;
    bool geometric = false;
    if (colon != std::string_view::npos) {
      std::string_view s = rest.substr(colon + 1);
      if (!s.empty() && s.front() == 'x') {
        geometric = true;
        s.remove_prefix(1);
      }
      step = detail::parse_int(s);
    }
    if (lo > hi) throw ConfigError("empty n-range '" + std::string(item) + "'");
    if (step < (geometric ? 2 : 1)) throw ConfigError("bad n-range step in '" + std::string(item) + "'");
    for (long n = lo; n <= hi; n = geometric ? n * step : n + step) out.push_back(static_cast<int>(n));
  }
  if (out.empty()) throw ConfigError("n-range is empty");
  return out;
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::oneshot;
  std::vector<int> n_values;
  std::string n_range_text;
  std::optional<int> horizon;        // explicit T; otherwise the parity-matched default
  std::optional<double> window_beta; // window pi n/2 +- n^beta
  bool sqrt_window = false;          // window pi n/2 +- sqrt(n)/ln n
  Engine engine = Engine::analytic;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";

  // classical
  std::int64_t trials = 20000;
  int monte_carlo_max_n = 10;

  // neighborhood
  int max_distance = 2;

  // routing
  std::string source;
  std::string destination;
  RoutingMode mode = RoutingMode::one_shot;
  int random_edges = 0;
  int random_interceptors = 0;
  int seeds = 1;
  double target_success = 0.9;

  /// Provenance lines for the CSV header, one "key = value" per field.
  std::vector<std::pair<std::string, std::string>> describe() const {
    std::vector<std::pair<std::string, std::string>> d;
    auto num = [](auto v) {
      std::ostringstream os;
      os << v;
      return os.str();
    };
    d.emplace_back("experiment", std::string(to_string(kind)));
    d.emplace_back("n_range", n_range_text);
    d.emplace_back("horizon", horizon                                ? num(*horizon)
                              : kind == ExperimentKind::continuous ? "round(pi n / 2)"
                                                                   : "parity-matched round(pi n / 2)");
    d.emplace_back("engine", std::string(to_string(engine)));
    d.emplace_back("seed", num(seed));
    d.emplace_back("format", format);
    switch (kind) {
      case ExperimentKind::oneshot:
      case ExperimentKind::oneshot_window:
        d.emplace_back("window_beta", window_beta ? num(*window_beta) : "none");
        d.emplace_back("sqrt_window", sqrt_window ? "true" : "false");
        break;
      case ExperimentKind::concurrent:
        d.emplace_back("target_success", num(target_success));
        break;
      case ExperimentKind::classical:
        d.emplace_back("trials", num(trials));
        d.emplace_back("monte_carlo_max_n", num(monte_carlo_max_n));
        d.emplace_back("target_success", num(target_success));
        break;
      case ExperimentKind::neighborhood:
        d.emplace_back("max_distance", num(max_distance));
        break;
      case ExperimentKind::routing:
        d.emplace_back("source", source.empty() ? "0...0" : source);
        d.emplace_back("destination", destination.empty() ? "1...1" : destination);
        d.emplace_back("mode", std::string(to_string(mode)));
        d.emplace_back("random_edges", num(random_edges));
        d.emplace_back("random_interceptors", num(random_interceptors));
        d.emplace_back("seeds", num(seeds));
        d.emplace_back("target_success", num(target_success));
        break;
      default:
        break;
    }
    return d;
  }
};

/// Per-kind defaults for the n-range when none is given.
inline std::string default_n_range(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::oneshot: return "50..800:x2";
    case ExperimentKind::oneshot_window: return "100,400,1600";
    case ExperimentKind::concurrent: return "16..512:x2";
    case ExperimentKind::continuous: return "16..256:x4";
    case ExperimentKind::classical: return "1..20";
    case ExperimentKind::neighborhood: return "10";
    case ExperimentKind::routing: return "10";
    case ExperimentKind::verify: return "2..10";
  }
  return "10";
}

/// Checks invariants; throws ConfigError.
inline void validate(ExperimentConfig& c) {
  if (c.n_range_text.empty()) c.n_range_text = default_n_range(c.kind);
  c.n_values = parse_n_range(c.n_range_text);
  for (int n : c.n_values) {
    if (n < 1) throw ConfigError("cube dimension must be >= 1");
    if (c.engine == Engine::direct && n > kMaxDirectDimension) {
      throw ConfigError("direct engine refuses n > " + std::to_string(kMaxDirectDimension) + " (got " +
                        std::to_string(n) + ")");
    }
    if (n > kMaxExperimentDimension) {
      throw ConfigError("n above " + std::to_string(kMaxExperimentDimension) + " is not supported");
    }
    if (c.kind == ExperimentKind::classical && n > kMaxExactHittingDimension) {
      throw ConfigError("classical experiments need n <= " + std::to_string(kMaxExactHittingDimension));
    }
  }
  if (c.format != "csv") throw ConfigError("only --format csv is supported");
  if (c.window_beta && !(*c.window_beta >= 0.0 && *c.window_beta < 0.5)) {
    throw ConfigError("window exponent beta must be in [0, 1/2)");
  }
  if (c.horizon && *c.horizon < 0) throw ConfigError("horizon must be non-negative");
  if (c.trials < 1) throw ConfigError("trials must be positive");
  if (c.max_distance < 0) throw ConfigError("max_distance must be non-negative");
  if (c.seeds < 1) throw ConfigError("seeds must be positive");
  if (c.random_edges < 0 || c.random_interceptors < 0) throw ConfigError("failure counts must be non-negative");
  if (!(c.target_success > 0.0 && c.target_success < 1.0)) throw ConfigError("target_success must be in (0, 1)");
  if (c.kind == ExperimentKind::neighborhood && c.engine != Engine::direct) {
    throw ConfigError("neighborhood scans use the direct engine");
  }
  if (c.kind == ExperimentKind::neighborhood) {
    for (int n : c.n_values) {
      if (n > 12) throw ConfigError("neighborhood scans need n <= 12");
      if (c.max_distance > n) throw ConfigError("max_distance exceeds n");
    }
  }
  if (c.kind == ExperimentKind::verify) {
    for (int n : c.n_values) {
      if (n > kMaxDirectDimension) throw ConfigError("verify runs the direct engine and needs n <= 14");
    }
  }
  if (c.kind == ExperimentKind::routing) {
    if (c.engine == Engine::analytic && (c.random_edges > 0 || c.random_interceptors > 0)) {
      throw ConfigError("routing failure models need the direct engine");
    }
    if ((!c.source.empty() || !c.destination.empty()) && c.n_values.size() != 1) {
      throw ConfigError("explicit routing endpoints need a single n");
    }
  }
}

/// Reads a JSON config document. Unknown keys are rejected so that typos do
/// not silently fall back to defaults.
inline ExperimentConfig parse_config(const nlohmann::json& doc, ExperimentConfig c = {}) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "experiment") c.kind = parse_kind(value.get<std::string>());
      else if (key == "n") c.n_range_text = std::to_string(value.get<int>());
      else if (key == "n_range") {
        if (value.is_array()) {
          std::string joined;
          for (const auto& v : value) joined += (joined.empty() ? "" : ",") + std::to_string(v.get<int>());
          c.n_range_text = joined;
        } else {
          c.n_range_text = value.get<std::string>();
        }
      }
      else if (key == "horizon") c.horizon = value.get<int>();
      else if (key == "window_beta") c.window_beta = value.get<double>();
      else if (key == "sqrt_window") c.sqrt_window = value.get<bool>();
      else if (key == "engine") c.engine = parse_engine(value.get<std::string>());
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "format") c.format = value.get<std::string>();
      else if (key == "trials") c.trials = value.get<std::int64_t>();
      else if (key == "monte_carlo_max_n") c.monte_carlo_max_n = value.get<int>();
      else if (key == "max_distance") c.max_distance = value.get<int>();
      else if (key == "source") c.source = value.get<std::string>();
      else if (key == "destination") c.destination = value.get<std::string>();
      else if (key == "mode") c.mode = parse_routing_mode(value.get<std::string>());
      else if (key == "random_edges") c.random_edges = value.get<int>();
      else if (key == "random_interceptors") c.random_interceptors = value.get<int>();
      else if (key == "seeds") c.seeds = value.get<int>();
      else if (key == "target_success") c.target_success = value.get<double>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc, std::move(base));
}

/// Horizon for cube dimension n under the config's rule.
inline int horizon_for(const ExperimentConfig& c, int n) { return c.horizon ? *c.horizon : default_horizon(n); }

}  // namespace qwalk::experiments
