#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

using Complex = std::complex<double>;

/// Amplitudes over coin (x) position. Index = direction * 2^n + position.
///
/// Residuals of the measured walk are stored unnormalized; nothing in this
/// library renormalizes a state implicitly.
class WalkState {
 public:
  explicit WalkState(LatticeSpec spec) : spec_(spec) {
    if (spec.n() > kMaxDenseDimension) throw std::invalid_argument("dense state limited to n <= 20");
    amps_.assign(spec.size(), Complex{});
  }

  WalkState(LatticeSpec spec, std::vector<Complex> amps) : spec_(spec), amps_(std::move(amps)) {
    if (amps_.size() != spec_.size()) throw std::invalid_argument("amplitude vector does not match lattice");
  }

  const LatticeSpec& spec() const { return spec_; }
  std::span<Complex> amps() { return amps_; }
  std::span<const Complex> amps() const { return amps_; }

  Complex& at(int direction, Position x) { return amps_[spec_.index(direction, x)]; }
  const Complex& at(int direction, Position x) const { return amps_[spec_.index(direction, x)]; }

  double squared_norm() const {
    double sum = 0.0;
    for (const Complex& a : amps_) sum += std::norm(a);
    return sum;
  }

  double norm() const { return std::sqrt(squared_norm()); }

 private:
  LatticeSpec spec_;
  std::vector<Complex> amps_;
};

/// <lhs|rhs>
inline Complex inner(const WalkState& lhs, const WalkState& rhs) {
  if (!(lhs.spec() == rhs.spec())) throw std::invalid_argument("inner product of mismatched states");
  Complex sum{};
  auto a = lhs.amps();
  auto b = rhs.amps();
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

inline double max_abs_difference(const WalkState& lhs, const WalkState& rhs) {
  if (!(lhs.spec() == rhs.spec())) throw std::invalid_argument("comparing mismatched states");
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.amps().size(); ++i) {
    worst = std::max(worst, std::abs(lhs.amps()[i] - rhs.amps()[i]));
  }
  return worst;
}

/// Equal superposition over all coin directions, localized at x.
inline WalkState make_initial(LatticeSpec spec, Position x) {
  if (!fits(x, spec.n())) throw std::invalid_argument("start position has more bits than the cube");
  WalkState state(spec);
  const double amp = 1.0 / std::sqrt(static_cast<double>(spec.coin_dim()));
  for (int d = 0; d < spec.coin_dim(); ++d) state.at(d, x) = amp;
  return state;
}

/// Coin-summed projector onto one vertex: Pi_0 = sum_i |i,x><i,x|, Pi_1 = 1 - Pi_0.
class PositionProjector {
 public:
  explicit PositionProjector(Position target) : target_(target) {}
  Position target() const { return target_; }

  /// Pi_0 applied to `s`.
  WalkState hit(const WalkState& s) const {
    check(s);
    WalkState out(s.spec());
    for (int d = 0; d < s.spec().coin_dim(); ++d) out.at(d, target_) = s.at(d, target_);
    return out;
  }

  /// Pi_1 applied to `s`.
  WalkState miss(const WalkState& s) const {
    check(s);
    WalkState out = s;
    for (int d = 0; d < s.spec().coin_dim(); ++d) out.at(d, target_) = Complex{};
    return out;
  }

 private:
  void check(const WalkState& s) const {
    if (!fits(target_, s.spec().n())) throw std::invalid_argument("projector target outside the cube");
  }

  Position target_;
};

struct MeasureOutcome {
  double stop_amplitude_norm;  // ||Pi_0 s||
  WalkState residual;          // Pi_1 s, not renormalized
};

inline MeasureOutcome project_measure(const WalkState& state, const PositionProjector& proj) {
  WalkState residual = proj.miss(state);
  double stop = 0.0;
  for (int d = 0; d < state.spec().coin_dim(); ++d) stop += std::norm(state.at(d, proj.target()));
  return {std::sqrt(stop), std::move(residual)};
}

struct SymmetricMeasureOutcome {
  Complex amplitude;   // <f|s>
  WalkState residual;  // s - <f|s> f
};

/// Rank-1 measurement with |f> = uniform coin state (x) |target>.
///
/// On bit-permutation symmetric states this agrees with the coin-summed
/// projector; the measured-walk tests check that.
inline SymmetricMeasureOutcome project_measure_symmetric(const WalkState& state, Position target) {
  if (!fits(target, state.spec().n())) throw std::invalid_argument("projector target outside the cube");
  const int dim = state.spec().coin_dim();
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  Complex overlap{};
  for (int d = 0; d < dim; ++d) overlap += amp * state.at(d, target);
  WalkState residual = state;
  for (int d = 0; d < dim; ++d) residual.at(d, target) -= overlap * amp;
  return {overlap, std::move(residual)};
}

/// Entry x is sum_i |amp(i, x)|^2.
inline std::vector<double> position_marginal(const WalkState& state) {
  const auto& spec = state.spec();
  std::vector<double> marginal(spec.positions(), 0.0);
  for (int d = 0; d < spec.coin_dim(); ++d) {
    const Complex* row = state.amps().data() + spec.index(d, 0);
    for (std::size_t x = 0; x < marginal.size(); ++x) marginal[x] += std::norm(row[x]);
  }
  return marginal;
}

}  // namespace qwalk
