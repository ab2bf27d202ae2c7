#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/measured_walk.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Continuous-time walk U(t) = exp(i (t/n) sum_i X_i) on position space only.
/// Each factor exp(i (t/n) X) = cos(t/n) 1 + i sin(t/n) X acts on one bit.

/// Product state: entry i holds the (|0>, |1>) amplitudes of bit i.
using ProductState = std::vector<std::array<Complex, 2>>;

inline ProductState corner_product_state(int n, Position x) {
  if (n < 1 || !fits(x, n)) throw std::invalid_argument("corner outside the cube");
  ProductState s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s[i] = ((x >> i) & 1U) ? std::array<Complex, 2>{0.0, 1.0} : std::array<Complex, 2>{1.0, 0.0};
  }
  return s;
}

inline ProductState continuous_evolve(const ProductState& state, double t) {
  const double theta = t / static_cast<double>(state.size());
  const Complex c{std::cos(theta), 0.0};
  const Complex is{0.0, std::sin(theta)};
  ProductState out(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    out[i][0] = c * state[i][0] + is * state[i][1];
    out[i][1] = is * state[i][0] + c * state[i][1];
  }
  return out;
}

inline Complex product_amplitude(const ProductState& state, Position x) {
  Complex amp{1.0, 0.0};
  for (std::size_t i = 0; i < state.size(); ++i) amp *= state[i][(x >> i) & 1U];
  return amp;
}

/// Dense position-space evolution, one bit at a time.
inline std::vector<Complex> continuous_evolve(int n, double t, std::span<const Complex> state) {
  if (n < 1 || n > kMaxDenseDimension) throw std::invalid_argument("dense continuous walk needs 1 <= n <= 20");
  if (state.size() != (std::size_t{1} << n)) throw std::invalid_argument("state size must be 2^n");
  std::vector<Complex> out(state.begin(), state.end());
  const double theta = t / n;
  const Complex c{std::cos(theta), 0.0};
  const Complex is{0.0, std::sin(theta)};
  for (int bit = 0; bit < n; ++bit) {
    const std::size_t mask = std::size_t{1} << bit;
    for (std::size_t x = 0; x < out.size(); ++x) {
      if (x & mask) continue;
      const Complex lo = out[x];
      const Complex hi = out[x | mask];
      out[x] = c * lo + is * hi;
      out[x | mask] = is * lo + c * hi;
    }
  }
  return out;
}

inline std::vector<Complex> continuous_basis_state(int n, Position x) {
  if (n < 1 || n > kMaxDenseDimension || !fits(x, n)) throw std::invalid_argument("basis state outside the cube");
  std::vector<Complex> s(std::size_t{1} << n);
  s[x] = 1.0;
  return s;
}

/// i^n sin^n(t/n): amplitude on 1...1 at time t from 0...0.
inline Complex continuous_alpha(int n, double t) {
  if (n < 1) throw std::invalid_argument("cube dimension must be >= 1");
  static constexpr std::array<Complex, 4> kPowersOfI{Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
  return kPowersOfI[static_cast<std::size_t>(n % 4)] * std::pow(std::sin(t / n), n);
}

/// cos^n(t/n): return amplitude <x|U(t)|x>.
inline double continuous_gamma(int n, double t) {
  if (n < 1) throw std::invalid_argument("cube dimension must be >= 1");
  return std::pow(std::cos(t / n), n);
}

/// Corner-to-corner walk measured at integer times 0, 1, ..., T, from the
/// stop-amplitude recursion with the closed-form alpha and gamma.
inline MeasuredTrace continuous_measured_trace(int n, int horizon) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  std::vector<Complex> a(static_cast<std::size_t>(horizon) + 1);
  std::vector<double> g(a.size());
  for (int t = 0; t <= horizon; ++t) {
    a[t] = continuous_alpha(n, t);
    g[t] = continuous_gamma(n, t);
  }
  return beta_recursion(std::span<const Complex>(a), std::span<const double>(g), n, horizon);
}

/// Same process simulated on a dense state: measure |target><target|, then
/// apply U(1).
inline MeasuredTrace continuous_measured_direct(int n, Position start, Position target, int horizon) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  if (!fits(target, n)) throw std::invalid_argument("target outside the cube");
  std::vector<Complex> state = continuous_basis_state(n, start);
  MeasuredTrace trace;
  trace.n = n;
  trace.target = target;
  trace.engine = Engine::direct;
  for (int t = 0; t <= horizon; ++t) {
    trace.push(state[target]);
    state[target] = Complex{};
    if (t < horizon) state = continuous_evolve(n, 1.0, state);
  }
  return trace;
}

}  // namespace qwalk
