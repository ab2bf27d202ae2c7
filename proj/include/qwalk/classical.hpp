#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/step.hpp"

namespace qwalk {

/// Simple random walk on the n-cube collapsed to Hamming weight: from weight
/// w it moves up with probability (1 - rest)(n - w)/n, down with
/// (1 - rest) w/n, and stays with probability `rest`.
class WeightChain {
 public:
  explicit WeightChain(int n, double rest = 0.0) : n_(n), rest_(rest) {
    if (n < 1) throw std::invalid_argument("cube dimension must be >= 1");
    if (!(rest >= 0.0 && rest < 1.0)) throw std::invalid_argument("resting probability must be in [0, 1)");
  }

  int n() const { return n_; }
  double rest() const { return rest_; }
  double up(int w) const { return (1.0 - rest_) * (n_ - w) / n_; }
  double down(int w) const { return (1.0 - rest_) * w / n_; }

  /// One step of a distribution over weights 0..n.
  std::vector<double> advance(const std::vector<double>& dist) const {
    std::vector<double> next(dist.size(), 0.0);
    for (int w = 0; w <= n_; ++w) {
      next[w] += rest_ * dist[w];
      if (w < n_) next[w + 1] += up(w) * dist[w];
      if (w > 0) next[w - 1] += down(w) * dist[w];
    }
    return next;
  }

 private:
  int n_;
  double rest_;
};

inline constexpr int kMaxExactHittingDimension = 500;

namespace detail {

inline void require_exact_size(int n) {
  if (n < 1 || n > kMaxExactHittingDimension) {
    throw std::domain_error("exact hitting times need 1 <= n <= 500");
  }
}

/// Birth-death reduction: with d_w the expected time to first go from
/// weight w to w + 1, up(w) d_w = 1 + down(w) d_{w-1}, and the corner time is
/// the sum of the d_w. Every term is positive, so unlike a generic
/// tridiagonal elimination (whose errors grow like C(n, w)) this is stable.
template <class Up, class Down>
double birth_death_passage(int n, Up up, Down down) {
  double previous = 0.0;
  double total = 0.0;
  for (int w = 0; w < n; ++w) {
    previous = (1.0 + down(w) * previous) / up(w);
    total += previous;
  }
  return total;
}

}  // namespace detail

/// Expected steps from 0...0 to 1...1 of the simple walk that rests with
/// probability `rest`: h(w) = 1 + rest h(w) + up h(w+1) + down h(w-1), h(n) = 0.
inline double exact_corner_hitting(int n, double rest = 0.0) {
  detail::require_exact_size(n);
  const WeightChain chain(n, rest);
  return detail::birth_death_passage(n, [&](int w) { return chain.up(w); }, [&](int w) { return chain.down(w); });
}

/// Mean corner-to-corner hitting time of the continuous chain with rates
/// q_ij = p_ij: solves -Q h = 1 on the transient weights, where the generator
/// has q_{w,w+1} = up(w), q_{w,w-1} = down(w).
inline double continuous_classical_hitting(int n) {
  detail::require_exact_size(n);
  const WeightChain chain(n);
  // Holding time 1 / (up + down) per visit; jump chain identical to the discrete one.
  auto rate_up = [&](int w) { return chain.up(w); };
  auto rate_down = [&](int w) { return chain.down(w); };
  return detail::birth_death_passage(n, rate_up, rate_down);
}

/// Stationary weight distribution by power iteration on the lazy chain.
inline std::vector<double> weight_stationary(int n, int iterations = 20000) {
  const WeightChain lazy(n, 0.5);
  std::vector<double> dist(static_cast<std::size_t>(n) + 1, 1.0 / (n + 1));
  for (int i = 0; i < iterations; ++i) dist = lazy.advance(dist);
  return dist;
}

/// Probability that the simple walk from 0...0 has reached 1...1 by step T.
inline double classical_hit_within(int n, int horizon) {
  const WeightChain chain(n);
  std::vector<double> dist(static_cast<std::size_t>(n) + 1, 0.0);
  dist[0] = 1.0;
  double absorbed = 0.0;
  for (int t = 0; t < horizon; ++t) {
    dist = chain.advance(dist);
    absorbed += dist[n];
    dist[n] = 0.0;
  }
  return absorbed;
}

struct HittingEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t completed = 0;
  std::int64_t truncated = 0;

  double truncated_fraction() const {
    const auto total = completed + truncated;
    return total == 0 ? 0.0 : static_cast<double>(truncated) / static_cast<double>(total);
  }
};

namespace detail {

class MeanAccumulator {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  HittingEstimate finish(std::int64_t truncated) const {
    HittingEstimate e;
    e.mean = mean_;
    e.completed = count_;
    e.truncated = truncated;
    e.standard_error = count_ > 1 ? std::sqrt(m2_ / static_cast<double>(count_ - 1) / static_cast<double>(count_)) : 0.0;
    return e;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline constexpr std::int64_t kTrialsPerShard = 4096;

/// Independent engine per shard of trials, derived from (seed, shard).
inline std::mt19937_64 shard_engine(std::uint64_t seed, std::int64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// Sample mean of first-hit times of the simple walk from 0...0 to 1...1.
/// Walks still running after `cap` steps are counted as truncated.
inline HittingEstimate monte_carlo_hitting(int n, std::int64_t trials, std::uint64_t seed, std::int64_t cap) {
  if (n < 1 || n > 62) throw std::invalid_argument("cube dimension must be in [1, 62]");
  if (trials < 1 || cap < 1) throw std::invalid_argument("trials and cap must be positive");
  const Position target = all_ones(n);
  detail::MeanAccumulator acc;
  std::int64_t truncated = 0;
  for (std::int64_t first = 0; first < trials; first += detail::kTrialsPerShard) {
    auto rng = detail::shard_engine(seed, first / detail::kTrialsPerShard);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const std::int64_t last = std::min(trials, first + detail::kTrialsPerShard);
    for (std::int64_t trial = first; trial < last; ++trial) {
      Position x = 0;
      std::int64_t steps = 0;
      while (x != target && steps < cap) {
        x ^= Position{1} << pick(rng);
        ++steps;
      }
      if (x == target) {
        acc.add(static_cast<double>(steps));
      } else {
        ++truncated;
      }
    }
  }
  return acc.finish(truncated);
}

/// First-hit times of the direction-memory walk obtained by measuring the
/// Grover coin after every step. The first move takes a uniformly random
/// direction (the measured symmetric coin state).
inline HittingEstimate directional_walk_hitting(int n, std::int64_t trials, std::uint64_t seed, std::int64_t cap) {
  if (n < 1 || n > 62) throw std::invalid_argument("cube dimension must be in [1, 62]");
  if (trials < 1 || cap < 1) throw std::invalid_argument("trials and cap must be positive");
  const StepOperator<SymmetricCoin> op(LatticeSpec(n), grover_coin(n));
  const Position target = all_ones(n);
  detail::MeanAccumulator acc;
  std::int64_t truncated = 0;
  for (std::int64_t first = 0; first < trials; first += detail::kTrialsPerShard) {
    auto rng = detail::shard_engine(seed, first / detail::kTrialsPerShard);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const std::int64_t last = std::min(trials, first + detail::kTrialsPerShard);
    for (std::int64_t trial = first; trial < last; ++trial) {
      const int d = pick(rng);
      DirectedPosition state{d, Position{1} << d};
      std::int64_t steps = 1;
      while (state.position != target && steps < cap) {
        state = coin_measured_classical_step(op, rng, state);
        ++steps;
      }
      if (state.position == target) {
        acc.add(static_cast<double>(steps));
      } else {
        ++truncated;
      }
    }
  }
  return acc.finish(truncated);
}

}  // namespace qwalk
