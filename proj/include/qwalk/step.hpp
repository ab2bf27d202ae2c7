#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Undirected cube edge {from, from ^ (1 << bit)}; `bit` counts coordinates
/// from zero, so it never names the resting direction.
struct Edge {
  Position from = 0;
  int bit = 0;

  Position to() const { return from ^ (Position{1} << bit); }
  bool operator==(const Edge&) const = default;
};

/// One walk step U = S (C (x) 1).
///
/// Deleted edges turn into reflections: the shift acts as identity on
/// (i, u) and (i, u ^ e_i), so S stays a permutation.
template <CoinOperator Coin = SymmetricCoin>
class StepOperator {
 public:
  StepOperator(LatticeSpec spec, Coin coin) : spec_(spec), coin_(std::move(coin)) {
    if (coin_.dim() != spec_.coin_dim()) throw std::invalid_argument("coin dimension does not match lattice");
  }

  StepOperator(LatticeSpec spec, Coin coin, const std::vector<Edge>& deleted) : StepOperator(spec, std::move(coin)) {
    for (const Edge& e : deleted) delete_edge(e);
  }

  const LatticeSpec& spec() const { return spec_; }
  const Coin& coin() const { return coin_; }
  bool resting() const { return spec_.resting(); }

  void delete_edge(const Edge& e) {
    if (e.bit < 0 || e.bit >= spec_.n() || !fits(e.from, spec_.n())) {
      throw std::invalid_argument("deleted edge lies outside the cube");
    }
    if (blocked_.empty()) blocked_.assign(spec_.size(), 0);
    const int direction = spec_.resting() ? e.bit + 1 : e.bit;
    blocked_[spec_.index(direction, e.from)] = 1;
    blocked_[spec_.index(direction, e.to())] = 1;
  }

  bool is_blocked(int direction, Position x) const {
    return !blocked_.empty() && blocked_[spec_.index(direction, x)] != 0;
  }

  /// In-place U: coin on each position block, then the XOR permutation.
  void apply(WalkState& s) const {
    if (!(s.spec() == spec_)) throw std::invalid_argument("state does not match step operator");
    auto amps = s.amps();
    coin_.apply(amps, spec_);
    const std::size_t positions = spec_.positions();
    for (int d = 0; d < spec_.coin_dim(); ++d) {
      const Position mask = spec_.shift_mask(d);
      if (mask == 0) continue;
      Complex* row = amps.data() + spec_.index(d, 0);
      const unsigned char* blocked = blocked_.empty() ? nullptr : blocked_.data() + spec_.index(d, 0);
      for (std::size_t x = 0; x < positions; ++x) {
        if ((x & mask) != 0) continue;
        if (blocked != nullptr && blocked[x] != 0) continue;
        std::swap(row[x], row[x | mask]);
      }
    }
  }

 private:
  LatticeSpec spec_;
  Coin coin_;
  std::vector<unsigned char> blocked_;
};

inline StepOperator<SymmetricCoin> grover_walk(int n, bool resting = false) {
  LatticeSpec spec(n, resting);
  return {spec, grover_coin(spec.coin_dim())};
}

template <CoinOperator Coin>
WalkState step(const StepOperator<Coin>& op, WalkState s) {
  op.apply(s);
  return s;
}

template <CoinOperator Coin>
WalkState evolve(const StepOperator<Coin>& op, WalkState s, int steps) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  for (int t = 0; t < steps; ++t) op.apply(s);
  return s;
}

/// Classical state of the coin-measured walk: the direction of the last move
/// and the current vertex.
struct DirectedPosition {
  int direction = 0;
  Position position = 0;
  bool operator==(const DirectedPosition&) const = default;
};

/// Probability that the coin-measured walk moves along `next` after arriving along `incoming`.
inline double coin_transition_probability(const SymmetricCoin& coin, int incoming, int next) {
  const double c = coin.entry(next, incoming);
  return c * c;
}

/// One step of the walk obtained by measuring the coin in the direction basis
/// after every step: draw j with probability |C_{j,i}|^2, then shift along j.
template <class Urbg>
DirectedPosition coin_measured_classical_step(const StepOperator<SymmetricCoin>& op, Urbg& rng,
                                              DirectedPosition current) {
  const SymmetricCoin& coin = op.coin();
  const int dim = coin.dim();
  if (current.direction < 0 || current.direction >= dim) throw std::invalid_argument("direction out of range");
  const double stay = coin_transition_probability(coin, current.direction, current.direction);
  const double switch_each = dim > 1 ? coin_transition_probability(coin, current.direction, (current.direction + 1) % dim)
                                     : 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng) * (stay + (dim - 1) * switch_each);
  int next = current.direction;
  if (u >= stay) {
    int k = static_cast<int>((u - stay) / switch_each);
    k = std::clamp(k, 0, dim - 2);
    next = k < current.direction ? k : k + 1;
  }
  Position pos = current.position;
  const Position mask = op.spec().shift_mask(next);
  if (mask != 0 && !op.is_blocked(next, pos)) pos ^= mask;
  return {next, pos};
}

}  // namespace qwalk
