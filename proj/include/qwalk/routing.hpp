#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/measured_walk.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/step.hpp"

namespace qwalk {

enum class RoutingMode {
  one_shot,    // walk T steps, then measure the position once
  concurrent,  // the destination asks "is the packet here?" every step
};

inline std::string_view to_string(RoutingMode m) { return m == RoutingMode::one_shot ? "oneshot" : "concurrent"; }

inline RoutingMode parse_routing_mode(std::string_view text) {
  if (text == "oneshot" || text == "one-shot" || text == "3") return RoutingMode::one_shot;
  if (text == "concurrent" || text == "3'") return RoutingMode::concurrent;
  throw std::invalid_argument("routing mode must be 'oneshot' or 'concurrent'");
}

/// Packet routing from `source` to `destination` on the n-cube, restricted
/// to the sub-cube spanned by the coordinates where they differ.
struct RoutingTask {
  int n = 0;
  Position source = 0;
  Position destination = 0;
  std::vector<Edge> deleted_edges;   // full-cube coordinates
  std::vector<Position> interceptors;
  RoutingMode mode = RoutingMode::one_shot;

  Position mask() const { return source ^ destination; }
  int dimension() const { return std::popcount(mask()); }

  bool in_subcube(Position z) const { return ((z ^ source) & ~mask()) == 0; }

  /// Sub-cube coordinates of z: the bits of z ^ source at the differing
  /// positions, packed from the lowest.
  Position to_local(Position z) const {
    const Position offset = z ^ source;
    const Position m = mask();
    Position local = 0;
    int out = 0;
    for (int bit = 0; bit < n; ++bit) {
      if (((m >> bit) & 1U) == 0) continue;
      if ((offset >> bit) & 1U) local |= Position{1} << out;
      ++out;
    }
    return local;
  }

  Position to_global(Position local) const {
    const Position m = mask();
    Position offset = 0;
    int in = 0;
    for (int bit = 0; bit < n; ++bit) {
      if (((m >> bit) & 1U) == 0) continue;
      if ((local >> in) & 1U) offset |= Position{1} << bit;
      ++in;
    }
    return source ^ offset;
  }

  /// Index among the differing coordinates of global bit `bit`.
  int local_bit(int bit) const { return std::popcount(mask() & ((Position{1} << bit) - 1)); }

  void validate() const {
    if (n < 1 || n > 62) throw std::invalid_argument("cube dimension must be in [1, 62]");
    if (!fits(source, n) || !fits(destination, n)) throw std::invalid_argument("endpoint outside the cube");
    if (dimension() < 1) throw std::invalid_argument("source and destination must differ");
    for (const Edge& e : deleted_edges) {
      if (e.bit < 0 || e.bit >= n || ((mask() >> e.bit) & 1U) == 0 || !in_subcube(e.from)) {
        throw std::invalid_argument("deleted edge lies outside the routing sub-cube");
      }
    }
    for (Position v : interceptors) {
      if (v == source || v == destination) throw std::invalid_argument("interceptor must differ from source and destination");
      if (!fits(v, n)) throw std::invalid_argument("interceptor outside the cube");
    }
  }
};

struct RoutingOutcome {
  int dimension = 0;
  int horizon = 0;
  Engine engine = Engine::direct;
  double delivered = 0.0;    // probability the packet is found at the destination
  double intercepted = 0.0;  // stop mass collected by interceptors
  std::int64_t resend_count = 1;
};

/// Walk length round(d pi / 2) with the parity of d.
inline int routing_horizon(int d) { return parity_matched(std::numbers::pi * d / 2.0, d); }

/// Runs the routing walk. Clean tasks may use the analytic engine; any
/// failure model requires the direct engine (d <= 14).
inline RoutingOutcome run_routing_walk(const RoutingTask& task, Engine engine, double target_success = 0.9) {
  task.validate();
  const int d = task.dimension();
  const int horizon = routing_horizon(d);
  RoutingOutcome out{d, horizon, engine, 0.0, 0.0, 1};
  const bool clean = task.deleted_edges.empty() && task.interceptors.empty();

  if (engine == Engine::analytic) {
    if (!clean) throw std::invalid_argument("failure models need the direct engine");
    if (task.mode == RoutingMode::one_shot) {
      const double a = alpha(SpectralSeries(d), horizon);
      out.delivered = a * a;
    } else {
      out.delivered = measured_walk_analytic(d, horizon).total();
    }
  } else {
    require_direct_size(d);
    std::vector<Edge> local_edges;
    for (const Edge& e : task.deleted_edges) local_edges.push_back({task.to_local(e.from), task.local_bit(e.bit)});
    std::vector<Position> watched;
    for (Position v : task.interceptors) {
      if (task.in_subcube(v)) watched.push_back(task.to_local(v));
    }
    const StepOperator<SymmetricCoin> op(LatticeSpec(d), grover_coin(d), local_edges);
    const Position local_destination = all_ones(d);
    WalkState state = make_initial(op.spec(), 0);
    for (int t = 0; t <= horizon; ++t) {
      for (Position v : watched) {
        MeasureOutcome hit = project_measure(state, PositionProjector(v));
        out.intercepted += hit.stop_amplitude_norm * hit.stop_amplitude_norm;
        state = std::move(hit.residual);
      }
      if (task.mode == RoutingMode::concurrent) {
        MeasureOutcome hit = project_measure(state, PositionProjector(local_destination));
        out.delivered += hit.stop_amplitude_norm * hit.stop_amplitude_norm;
        state = std::move(hit.residual);
      }
      if (t < horizon) op.apply(state);
    }
    if (task.mode == RoutingMode::one_shot) out.delivered = position_marginal(state)[local_destination];
  }

  if (task.mode == RoutingMode::concurrent && out.delivered > 0.0) {
    out.resend_count = amplified_concurrent(d, horizon, std::min(out.delivered, 1.0), target_success).repetitions;
  }
  return out;
}

/// Uniformly random edge of the routing sub-cube.
template <class Urbg>
Edge random_subcube_edge(const RoutingTask& task, Urbg& rng) {
  const int d = task.dimension();
  std::uniform_int_distribution<int> pick_bit(0, d - 1);
  std::uniform_int_distribution<Position> pick_vertex(0, all_ones(d));
  const int local = pick_bit(rng);
  Position from = pick_vertex(rng) & ~(Position{1} << local);
  int global_bit = 0;
  for (int bit = 0, seen = 0; bit < task.n; ++bit) {
    if (((task.mask() >> bit) & 1U) == 0) continue;
    if (seen++ == local) {
      global_bit = bit;
      break;
    }
  }
  return {task.to_global(from), global_bit};
}

/// Uniformly random sub-cube vertex other than source and destination.
template <class Urbg>
Position random_interceptor(const RoutingTask& task, Urbg& rng) {
  const int d = task.dimension();
  if (d < 2) throw std::invalid_argument("a 1-dimensional sub-cube has no intermediate vertex");
  std::uniform_int_distribution<Position> pick(1, all_ones(d) - 1);
  return task.to_global(pick(rng));
}

}  // namespace qwalk
