#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qwalk/calibration.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/continuous_walk.hpp"
#include "qwalk/experiments/config.hpp"
#include "qwalk/experiments/table.hpp"
#include "qwalk/experiments/workers.hpp"
#include "qwalk/measured_walk.hpp"
#include "qwalk/routing.hpp"

namespace qwalk::experiments {

namespace detail {

inline const std::vector<std::string> kCommonColumns{"experiment", "n", "T", "engine", "probability", "runtime_ms", "seed"};

inline ResultTable make_table(const ExperimentConfig& c, const std::vector<std::string>& extra) {
  ResultTable t;
  t.columns = kCommonColumns;
  t.columns.insert(t.columns.end(), extra.begin(), extra.end());
  t.comments = c.describe();
  return t;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline ResultRow common(const ExperimentConfig& c, int n, int horizon, std::string engine, double p, double ms) {
  return {std::string(to_string(c.kind)), std::to_string(n), std::to_string(horizon), std::move(engine), fmt(p),
          fmt_ms(ms), std::to_string(c.seed)};
}

inline ResultRow& extend(ResultRow& row, std::initializer_list<std::string> extra) {
  row.insert(row.end(), extra.begin(), extra.end());
  return row;
}

inline void append_all(ResultTable& t, std::vector<std::vector<ResultRow>> chunks) {
  for (auto& chunk : chunks) {
    for (auto& row : chunk) t.add(std::move(row));
  }
}

inline double cube(double x) { return x * x * x; }

}  // namespace detail

/// One-shot corner-to-corner probabilities at the default horizon and, when
/// requested, every parity-matched T inside the beta or sqrt(n)/ln n window.
inline ResultTable run_oneshot_suite(const ExperimentConfig& c) {
  ResultTable table = detail::make_table(c, {"window", "offset", "one_minus_p", "log3n_over_n", "scaled_deficit"});
  struct Job {
    int n;
    int horizon;
    std::string window;
  };
  std::vector<Job> jobs;
  for (int n : c.n_values) {
    const int center = horizon_for(c, n);
    jobs.push_back({n, center, "center"});
    auto add_window = [&](const std::string& label, double half_width) {
      const double mid = std::numbers::pi * n / 2.0;
      for (int t = static_cast<int>(std::ceil(mid - half_width)); t <= mid + half_width; ++t) {
        if (t >= 0 && (t - n) % 2 == 0) jobs.push_back({n, t, label});
      }
    };
    if (c.window_beta) add_window("beta", std::pow(n, *c.window_beta));
    if (c.sqrt_window || c.kind == ExperimentKind::oneshot_window) {
      if (n > 1) add_window("sqrt", std::sqrt(n) / std::log(n));
    }
  }
  const auto rows = parallel_map<std::vector<ResultRow>>(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    const detail::Stopwatch clock;
    const double p = one_shot_probability(job.n, 0, all_ones(job.n), job.horizon, c.engine).probability;
    const double log_n = std::log(job.n);
    double scaled = (1.0 - p) * job.n / detail::cube(log_n);
    if (job.window == "beta") scaled = (1.0 - p) * std::pow(job.n, 1.0 - 2.0 * *c.window_beta) / log_n;
    if (job.window == "sqrt") scaled = (1.0 - p) * log_n / std::log(log_n);
    ResultRow row = detail::common(c, job.n, job.horizon, std::string(to_string(c.engine)), p, clock.ms());
    detail::extend(row, {job.window, std::to_string(job.horizon - default_horizon(job.n)), fmt(1.0 - p),
                         fmt(detail::cube(log_n) / job.n), fmt(scaled)});
    return std::vector<ResultRow>{row};
  });
  detail::append_all(table, rows);
  return table;
}

/// Concurrent hitting probability p_T of the target-measured walk.
inline ResultTable run_concurrent_suite(const ExperimentConfig& c) {
  ResultTable table =
      detail::make_table(c, {"p_n_log2n", "p_sqrt_n", "repetitions", "total_steps", "scaled_cost"});
  const auto rows = parallel_map<std::vector<ResultRow>>(c.n_values.size(), [&](std::size_t i) {
    const int n = c.n_values[i];
    const int horizon = horizon_for(c, n);
    const detail::Stopwatch clock;
    const double p = concurrent_hitting(n, 0, all_ones(n), horizon, c.engine).probability;
    const double log_n = std::log(n);
    std::string reps = "", steps = "", cost = "";
    if (p > 0.0) {
      const Amplification a = amplified_concurrent(n, horizon, std::min(p, 1.0), c.target_success);
      reps = std::to_string(a.repetitions);
      steps = std::to_string(a.total_steps);
      cost = fmt(a.scaled_cost);
    }
    ResultRow row = detail::common(c, n, horizon, std::string(to_string(c.engine)), p, clock.ms());
    detail::extend(row, {fmt(p * n * log_n * log_n), fmt(p * std::sqrt(n)), reps, steps, cost});
    return std::vector<ResultRow>{row};
  });
  detail::append_all(table, rows);
  return table;
}

/// Horizon for the continuous walk: round(pi n / 2) with no parity rule.
inline int continuous_horizon(const ExperimentConfig& c, int n) {
  return c.horizon ? *c.horizon : static_cast<int>(std::lround(std::numbers::pi * n / 2.0));
}

/// Continuous-time walk measured at integer times; also the unmeasured
/// one-shot probability at t = pi n / 2.
inline ResultTable run_continuous_suite(const ExperimentConfig& c) {
  ResultTable table = detail::make_table(c, {"one_shot_half_period", "p_sqrt_n"});
  const auto rows = parallel_map<std::vector<ResultRow>>(c.n_values.size(), [&](std::size_t i) {
    const int n = c.n_values[i];
    const int horizon = continuous_horizon(c, n);
    const double half_period = std::numbers::pi * n / 2.0;
    const detail::Stopwatch clock;
    double p = 0.0;
    double one_shot = 0.0;
    if (c.engine == Engine::analytic) {
      p = continuous_measured_trace(n, horizon).total();
      one_shot = std::norm(continuous_alpha(n, half_period));
    } else {
      p = continuous_measured_direct(n, 0, all_ones(n), horizon).total();
      one_shot = std::norm(continuous_evolve(n, half_period, continuous_basis_state(n, 0))[all_ones(n)]);
    }
    ResultRow row = detail::common(c, n, horizon, std::string(to_string(c.engine)), p, clock.ms());
    detail::extend(row, {fmt(one_shot), fmt(p * std::sqrt(n))});
    return std::vector<ResultRow>{row};
  });
  detail::append_all(table, rows);
  return table;
}

/// Classical comparison. probability = P(simple walk reaches 1...1 within T).
/// Monte Carlo columns stay empty above monte_carlo_max_n.
inline ResultTable run_classical_suite(const ExperimentConfig& c) {
  ResultTable table = detail::make_table(c, {"exact_hitting", "lower_bound", "mc_mean", "mc_stderr", "mc_truncated",
                                             "directional_mean", "directional_stderr", "quantum_cost",
                                             "quantum_bound"});
  const auto rows = parallel_map<std::vector<ResultRow>>(c.n_values.size(), [&](std::size_t i) {
    const int n = c.n_values[i];
    const int horizon = horizon_for(c, n);
    const detail::Stopwatch clock;
    const double p = classical_hit_within(n, horizon);
    const double exact = exact_corner_hitting(n);
    std::string mc_mean, mc_err, mc_trunc, dir_mean, dir_err;
    if (n <= c.monte_carlo_max_n) {
      const std::int64_t cap = std::int64_t{64} << n;
      const HittingEstimate mc = monte_carlo_hitting(n, c.trials, c.seed, cap);
      const HittingEstimate dir = directional_walk_hitting(n, c.trials, c.seed, cap);
      mc_mean = fmt(mc.mean);
      mc_err = fmt(mc.standard_error);
      mc_trunc = fmt(mc.truncated_fraction());
      dir_mean = fmt(dir.mean);
      dir_err = fmt(dir.standard_error);
    }
    // Amplified concurrent quantum cost r T at the default horizon.
    const int qt = default_horizon(n);
    const double qp = std::min(1.0, measured_walk_analytic(n, qt).total());
    const Amplification amp = amplified_concurrent(n, qt, qp, c.target_success);
    const double log_n = std::log(n);
    ResultRow row = detail::common(c, n, horizon, "exact", p, clock.ms());
    detail::extend(row, {fmt(exact), fmt(std::ldexp(1.0, n - 1)), mc_mean, mc_err, mc_trunc, dir_mean, dir_err,
                         std::to_string(amp.total_steps),
                         fmt(calibration::kAmplifiedCost * n * n * log_n * log_n)});
    return std::vector<ResultRow>{row};
  });
  detail::append_all(table, rows);
  return table;
}

/// Starts at distance d from the corner 0...0 (first d bits set) and
/// measures the one-shot probability at 1...1 after T and T - d steps, plus
/// the concurrent probability for a target at distance d from 1...1.
inline ResultTable run_neighborhood_scan(const ExperimentConfig& c) {
  ResultTable table = detail::make_table(c, {"distance", "measure", "start", "target", "ratio_to_corner", "p_times_n_pow_d"});
  const auto rows = parallel_map<std::vector<ResultRow>>(c.n_values.size(), [&](std::size_t i) {
    const int n = c.n_values[i];
    const int horizon = horizon_for(c, n);
    const Position far = all_ones(n);
    const double corner = one_shot_probability(n, 0, far, horizon, Engine::direct).probability;
    std::vector<ResultRow> out;
    for (int d = 0; d <= c.max_distance; ++d) {
      const Position start = all_ones(d);
      auto emit = [&](const char* measure, Position from, Position to, int t, double p, double ms) {
        ResultRow row = detail::common(c, n, t, "direct", p, ms);
        detail::extend(row, {std::to_string(d), measure, format_bitstring(from, n), format_bitstring(to, n),
                             fmt(corner > 0.0 ? p / corner : 0.0), fmt(p * std::pow(n, d))});
        out.push_back(std::move(row));
      };
      {
        const detail::Stopwatch clock;
        const double p = one_shot_probability(n, start, far, horizon, Engine::direct).probability;
        emit("oneshot", start, far, horizon, p, clock.ms());
      }
      if (d > 0 && horizon >= d) {
        const detail::Stopwatch clock;
        const double p = one_shot_probability(n, start, far, horizon - d, Engine::direct).probability;
        emit("oneshot", start, far, horizon - d, p, clock.ms());
      }
      {
        const Position near_target = far ^ start;
        const detail::Stopwatch clock;
        const double p = concurrent_hitting(n, 0, near_target, horizon, Engine::direct).probability;
        emit("concurrent", 0, near_target, horizon, p, clock.ms());
      }
    }
    return out;
  });
  detail::append_all(table, rows);
  return table;
}

namespace detail {

inline RoutingTask routing_task(const ExperimentConfig& c, int n) {
  RoutingTask task;
  task.n = n;
  try {
    task.source = c.source.empty() ? 0 : parse_bitstring(c.source);
    task.destination = c.destination.empty() ? all_ones(n) : parse_bitstring(c.destination);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if ((!c.source.empty() && static_cast<int>(c.source.size()) != n) ||
      (!c.destination.empty() && static_cast<int>(c.destination.size()) != n)) {
    throw ConfigError("routing endpoints must have n bits");
  }
  task.mode = c.mode;
  if (task.dimension() < 1) throw ConfigError("source and destination must differ");
  if (c.random_interceptors > 0 && task.dimension() < 2) throw ConfigError("interceptors need a sub-cube of dimension >= 2");
  return task;
}

}  // namespace detail

/// Packet routing on the sub-cube between source and destination. Each seed
/// draws its own random failures; clean_probability is the failure-free run.
inline ResultTable run_routing(const ExperimentConfig& c) {
  ResultTable table = detail::make_table(c, {"cube_n", "source", "destination", "mode", "deleted_edges", "interceptors",
                                             "intercepted", "clean_probability", "degradation", "resend_count"});
  struct Job {
    int n;
    int seed_index;
  };
  std::vector<Job> jobs;
  std::vector<double> clean(c.n_values.size());
  for (std::size_t k = 0; k < c.n_values.size(); ++k) {
    const RoutingTask task = detail::routing_task(c, c.n_values[k]);
    if (c.engine == Engine::direct && task.dimension() > kMaxDirectDimension) {
      throw ConfigError("direct routing needs sub-cube dimension <= " + std::to_string(kMaxDirectDimension));
    }
    clean[k] = run_routing_walk(task, c.engine, c.target_success).delivered;
    for (int s = 0; s < c.seeds; ++s) jobs.push_back({static_cast<int>(k), s});
  }
  const auto rows = parallel_map<std::vector<ResultRow>>(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    const int n = c.n_values[job.n];
    RoutingTask task = detail::routing_task(c, n);
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(job.seed_index);
    std::mt19937_64 rng(seed);
    std::string edges, nodes;
    for (int e = 0; e < c.random_edges; ++e) {
      const Edge edge = random_subcube_edge(task, rng);
      task.deleted_edges.push_back(edge);
      edges += (edges.empty() ? "" : ";") + format_bitstring(edge.from, n) + "/" + std::to_string(edge.bit);
    }
    for (int v = 0; v < c.random_interceptors; ++v) {
      const Position node = random_interceptor(task, rng);
      task.interceptors.push_back(node);
      nodes += (nodes.empty() ? "" : ";") + format_bitstring(node, n);
    }
    const detail::Stopwatch clock;
    const RoutingOutcome out = run_routing_walk(task, c.engine, c.target_success);
    ResultRow row = detail::common(c, out.dimension, out.horizon, std::string(to_string(c.engine)), out.delivered, clock.ms());
    row[6] = std::to_string(seed);
    detail::extend(row, {std::to_string(n), format_bitstring(task.source, n), format_bitstring(task.destination, n),
                         std::string(to_string(task.mode)), edges, nodes, fmt(out.intercepted), fmt(clean[job.n]),
                         fmt(clean[job.n] - out.delivered), std::to_string(out.resend_count)});
    return std::vector<ResultRow>{row};
  });
  detail::append_all(table, rows);
  return table;
}

}  // namespace qwalk::experiments
