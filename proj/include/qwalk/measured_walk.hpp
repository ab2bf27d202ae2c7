#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/step.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

enum class Engine { direct, analytic };
enum class HittingKind { one_shot, concurrent };

/// Which measurement the direct engine performs at the target.
enum class TargetProjector {
  position,   // coin-summed Pi_0 (rank coin_dim); beta_t is ||Pi_0 s||
  symmetric,  // |f><f| with f the uniform coin state; beta_t is <f|s>
};

inline std::string_view to_string(Engine e) { return e == Engine::direct ? "direct" : "analytic"; }

inline Engine parse_engine(std::string_view text) {
  if (text == "direct") return Engine::direct;
  if (text == "analytic") return Engine::analytic;
  throw std::invalid_argument("engine must be 'direct' or 'analytic'");
}

/// Stop amplitudes of a target-measured walk for t = 0..T.
///
/// Phase convention: the analytic engine stores the signed amplitudes that
/// the recursion produces (real for the coined walk, i^n times real for the
/// continuous walk). Across engines only |beta_t| is comparable.
struct MeasuredTrace {
  int n = 0;
  Position target = 0;
  Engine engine = Engine::direct;
  std::vector<Complex> beta;
  std::vector<double> stop_prob;
  std::vector<double> cumulative;

  int horizon() const { return static_cast<int>(beta.size()) - 1; }
  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }

  void push(Complex amplitude) {
    beta.push_back(amplitude);
    stop_prob.push_back(std::norm(amplitude));
    cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + stop_prob.back());
  }
};

struct HittingResult {
  HittingKind kind = HittingKind::one_shot;
  int horizon = 0;
  double probability = 0.0;
  Engine engine = Engine::direct;
};

inline void require_direct_size(int n) {
  if (n < 1 || n > kMaxDirectDimension) {
    throw std::domain_error("direct engine supports 1 <= n <= " + std::to_string(kMaxDirectDimension));
  }
}

/// Iterates {measure at target; stop on hit; else apply U} from `initial`,
/// recording unnormalized stop amplitudes. The first measurement happens
/// before the first step.
template <CoinOperator Coin>
MeasuredTrace measured_walk_direct(const StepOperator<Coin>& op, WalkState state, Position target, int horizon,
                                   TargetProjector projector = TargetProjector::position) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  MeasuredTrace trace;
  trace.n = op.spec().n();
  trace.target = target;
  trace.engine = Engine::direct;
  const PositionProjector proj(target);
  for (int t = 0; t <= horizon; ++t) {
    if (projector == TargetProjector::position) {
      MeasureOutcome outcome = project_measure(state, proj);
      trace.push(outcome.stop_amplitude_norm);
      state = std::move(outcome.residual);
    } else {
      SymmetricMeasureOutcome outcome = project_measure_symmetric(state, target);
      trace.push(outcome.amplitude);
      state = std::move(outcome.residual);
    }
    if (t < horizon) op.apply(state);
  }
  return trace;
}

/// Grover walk on the n-cube started symmetrically at `start`, measured at `target`.
inline MeasuredTrace measured_walk_direct(int n, Position start, Position target, int horizon,
                                          TargetProjector projector = TargetProjector::position) {
  require_direct_size(n);
  if (!fits(start, n) || !fits(target, n)) throw std::invalid_argument("position outside the cube");
  const auto op = grover_walk(n);
  return measured_walk_direct(op, make_initial(op.spec(), start), target, horizon, projector);
}

/// beta_t = alpha_t - sum_{i=1}^{t} beta_{t-i} gamma_i.
///
/// Identical to the corner form beta_{n+k} = alpha_{n+k} - sum_{i=1}^k
/// beta_{n+k-i} gamma_i because beta_t = alpha_t = 0 below n. When every odd
/// gamma vanishes only even lags are visited.
inline MeasuredTrace beta_recursion(std::span<const Complex> alpha_values, std::span<const double> gamma_values, int n,
                                    int horizon) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  if (alpha_values.size() <= static_cast<std::size_t>(horizon) || gamma_values.size() <= static_cast<std::size_t>(horizon)) {
    throw std::invalid_argument("alpha and gamma must cover the horizon");
  }
  bool odd_vanish = true;
  for (int i = 1; i <= horizon; i += 2) {
    if (gamma_values[i] != 0.0) {
      odd_vanish = false;
      break;
    }
  }
  const int lag_stride = odd_vanish ? 2 : 1;
  const int first_lag = odd_vanish ? 2 : 1;

  MeasuredTrace trace;
  trace.n = n;
  trace.target = all_ones(n);
  trace.engine = Engine::analytic;
  trace.beta.reserve(static_cast<std::size_t>(horizon) + 1);
  for (int t = 0; t <= horizon; ++t) {
    Complex acc = alpha_values[t];
    for (int i = first_lag; i <= t; i += lag_stride) acc -= trace.beta[t - i] * gamma_values[i];
    trace.push(acc);
  }
  return trace;
}

inline MeasuredTrace beta_recursion(std::span<const double> alpha_values, std::span<const double> gamma_values, int n,
                                    int horizon) {
  std::vector<Complex> promoted(alpha_values.begin(), alpha_values.end());
  return beta_recursion(std::span<const Complex>(promoted), gamma_values, n, horizon);
}

/// Closed-form corner-to-corner trace of the Grover walk.
inline MeasuredTrace measured_walk_analytic(int n, int horizon) {
  const SpectralSeries series(n);
  const auto a = alpha_series(series, horizon);
  const auto g = gamma_series(series, horizon);
  return beta_recursion(std::span<const double>(a), std::span<const double>(g), n, horizon);
}

/// Probability of finding position y after T unmeasured steps from x.
inline HittingResult one_shot_probability(int n, Position x, Position y, int horizon, Engine engine) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  if (!fits(x, n) || !fits(y, n)) throw std::invalid_argument("position outside the cube");
  HittingResult result{HittingKind::one_shot, horizon, 0.0, engine};
  if (engine == Engine::analytic) {
    if (y != complement(x, n)) {
      throw std::invalid_argument("analytic engine only covers the opposite-corner target");
    }
    const double a = alpha(SpectralSeries(n), horizon);
    result.probability = a * a;
    return result;
  }
  require_direct_size(n);
  const auto op = grover_walk(n);
  const WalkState final_state = evolve(op, make_initial(op.spec(), x), horizon);
  result.probability = position_marginal(final_state)[y];
  return result;
}

inline MeasuredTrace measured_trace(int n, Position x, Position target, int horizon, Engine engine) {
  if (engine == Engine::analytic) {
    if (!fits(x, n) || target != complement(x, n)) {
      throw std::invalid_argument("analytic engine only covers the opposite-corner target");
    }
    MeasuredTrace trace = measured_walk_analytic(n, horizon);
    trace.target = target;
    return trace;
  }
  return measured_walk_direct(n, x, target, horizon);
}

/// Probability that the target-measured walk stops at some t <= T.
inline HittingResult concurrent_hitting(int n, Position x, Position target, int horizon, Engine engine) {
  const MeasuredTrace trace = measured_trace(n, x, target, horizon, engine);
  return {HittingKind::concurrent, horizon, trace.total(), engine};
}

struct Amplification {
  std::int64_t repetitions = 0;
  std::int64_t total_steps = 0;
  /// total_steps / (n^2 ln^2 n); bounded when fed concurrent hitting inputs.
  double scaled_cost = 0.0;
};

/// Restart-and-repeat boosting: r = ceil(ln(1 - target) / ln(1 - p)).
inline Amplification amplified_concurrent(int n, int horizon, double p_single, double target_success) {
  if (n < 1) throw std::invalid_argument("cube dimension must be >= 1");
  if (!(target_success > 0.0 && target_success < 1.0)) throw std::invalid_argument("target success must be in (0, 1)");
  if (!(p_single > 0.0) || p_single > 1.0) throw std::domain_error("single-run probability must be in (0, 1]");
  std::int64_t reps = 1;
  if (p_single < 1.0) {
    const double r = std::ceil(std::log1p(-target_success) / std::log1p(-p_single) - 1e-12);
    reps = static_cast<std::int64_t>(std::max(1.0, r));
  }
  Amplification out{reps, reps * horizon, 0.0};
  const double log_n = std::log(static_cast<double>(n));
  if (n > 1) out.scaled_cost = static_cast<double>(out.total_steps) / (double(n) * n * log_n * log_n);
  return out;
}

}  // namespace qwalk
