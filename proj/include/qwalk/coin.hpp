#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Real symmetric coin: `a` on the diagonal, `b` everywhere else.
class SymmetricCoin {
 public:
  SymmetricCoin(int dim, double a, double b) : dim_(dim), a_(a), b_(b) {
    if (dim < 1) throw std::invalid_argument("coin dimension must be >= 1");
  }

  int dim() const { return dim_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double entry(int row, int col) const { return row == col ? a_ : b_; }

  /// Dense row-major matrix.
  std::vector<double> matrix() const {
    std::vector<double> m(static_cast<std::size_t>(dim_) * dim_, b_);
    for (int i = 0; i < dim_; ++i) m[static_cast<std::size_t>(i) * dim_ + i] = a_;
    return m;
  }

  /// max |(C C^T - 1)_ij|
  double unitarity_residual() const {
    // (C C^T)_ii = a^2 + (d-1) b^2, (C C^T)_ij = 2ab + (d-2) b^2.
    const double d = dim_;
    const double diag = a_ * a_ + (d - 1) * b_ * b_ - 1.0;
    const double off = dim_ > 1 ? 2 * a_ * b_ + (d - 2) * b_ * b_ : 0.0;
    return std::max(std::abs(diag), std::abs(off));
  }

  /// Applies C to the coin register of every position block:
  /// (Cv)_i = (a - b) v_i + b * sum_j v_j.
  void apply(std::span<Complex> amps, const LatticeSpec& spec) const {
    if (spec.coin_dim() != dim_) throw std::invalid_argument("coin dimension does not match lattice");
    const std::size_t positions = spec.positions();
    std::vector<Complex> column_sum(positions, Complex{});
    for (int d = 0; d < dim_; ++d) {
      const Complex* row = amps.data() + spec.index(d, 0);
      for (std::size_t x = 0; x < positions; ++x) column_sum[x] += row[x];
    }
    const double diag = a_ - b_;
    for (int d = 0; d < dim_; ++d) {
      Complex* row = amps.data() + spec.index(d, 0);
      for (std::size_t x = 0; x < positions; ++x) row[x] = diag * row[x] + b_ * column_sum[x];
    }
  }

 private:
  int dim_;
  double a_;
  double b_;
};

/// Anything that acts as a coin on every position block of a state.
template <class C>
concept CoinOperator = requires(const C& coin, std::span<Complex> amps, const LatticeSpec& spec) {
  { coin.dim() } -> std::convertible_to<int>;
  coin.apply(amps, spec);
};

/// Grover diffusion coin: a = 2/dim - 1, b = 2/dim.
inline SymmetricCoin grover_coin(int dim) {
  if (dim < 1) throw std::invalid_argument("grover coin needs dim >= 1");
  return SymmetricCoin(dim, 2.0 / dim - 1.0, 2.0 / dim);
}

/// (n+1)-dimensional Grover coin for the aperiodic walk; direction 0 is the self-loop.
inline SymmetricCoin resting_coin(int n) {
  if (n < 1) throw std::invalid_argument("resting coin needs n >= 1");
  return grover_coin(n + 1);
}

}  // namespace qwalk
