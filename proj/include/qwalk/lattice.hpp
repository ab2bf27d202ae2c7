#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qwalk {

/// Vertex of the n-cube. Bit i of the integer is the coordinate along e_{i+1}.
using Position = std::uint64_t;

inline constexpr int kMaxDenseDimension = 20;
inline constexpr int kMaxDirectDimension = 14;

/// Cube dimension and coin dimension of a coined walk.
///
/// coin_dim is n for the periodic walk and n + 1 when a resting (self-loop)
/// direction is present. In the resting layout direction 0 is the self-loop
/// and direction i >= 1 flips bit i - 1.
class LatticeSpec {
 public:
  explicit LatticeSpec(int n, bool resting = false) : n_(n), resting_(resting) {
    if (n < 1) throw std::invalid_argument("cube dimension must be >= 1");
    if (n > 62) throw std::invalid_argument("cube dimension must be <= 62");
  }

  int n() const { return n_; }
  bool resting() const { return resting_; }
  int coin_dim() const { return resting_ ? n_ + 1 : n_; }
  std::size_t positions() const { return std::size_t{1} << n_; }
  std::size_t size() const { return positions() * static_cast<std::size_t>(coin_dim()); }

  /// XOR mask applied to the position by a step along `direction`.
  Position shift_mask(int direction) const {
    if (resting_) return direction == 0 ? Position{0} : Position{1} << (direction - 1);
    return Position{1} << direction;
  }

  std::size_t index(int direction, Position x) const {
    return static_cast<std::size_t>(direction) * positions() + static_cast<std::size_t>(x);
  }

  bool operator==(const LatticeSpec&) const = default;

 private:
  int n_;
  bool resting_;
};

inline Position all_ones(int n) { return n >= 64 ? ~Position{0} : (Position{1} << n) - 1; }

inline Position complement(Position x, int n) { return x ^ all_ones(n); }

inline int hamming_weight(Position x) { return std::popcount(x); }

inline int hamming_distance(Position x, Position y) { return std::popcount(x ^ y); }

inline bool fits(Position x, int n) { return (x & ~all_ones(n)) == 0; }

/// Parses a bitstring written coordinate-first: character i is bit i.
/// "100" is e_1, i.e. the integer 1.
inline Position parse_bitstring(std::string_view text) {
  if (text.empty() || text.size() > 62) throw std::invalid_argument("bitstring length out of range");
  Position x = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      x |= Position{1} << i;
    } else if (text[i] != '0') {
      throw std::invalid_argument("bitstring must contain only '0' and '1'");
    }
  }
  return x;
}

inline std::string format_bitstring(Position x, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

/// Integer nearest `target` whose parity matches `parity_of`; ties go to the
/// larger value.
inline int parity_matched(double target, int parity_of) {
  const int below = static_cast<int>(std::floor(target));
  int best = 0;
  double best_gap = 1e300;
  for (int candidate = below - 2; candidate <= below + 3; ++candidate) {
    if (((candidate - parity_of) % 2 + 2) % 2 != 0) continue;
    const double gap = std::abs(candidate - target);
    if (gap < best_gap - 1e-12 || (std::abs(gap - best_gap) <= 1e-12 && candidate > best)) {
      best = candidate;
      best_gap = gap;
    }
  }
  return best;
}

/// Default measurement horizon: round(pi n / 2) with the parity of n.
inline int default_horizon(int n) { return parity_matched(std::numbers::pi * n / 2.0, n); }

}  // namespace qwalk
