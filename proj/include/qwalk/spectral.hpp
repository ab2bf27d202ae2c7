#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/walk_state.hpp"

namespace qwalk {

/// Neumaier-compensated running sum.
template <class Real = double>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(Real value) {
    const Real t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Real value() const { return sum_ + compensation_; }

 private:
  Real sum_{};
  Real compensation_{};
};

/// log( C(n, m) / 2^n )
inline double log_binomial_weight(int n, int m) {
  return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0) - n * std::numbers::ln2;
}

/// Per-Hamming-weight eigenphases and binomial weights of the Grover walk on
/// the n-cube. omega_m satisfies cos(omega_m) = 1 - 2m/n.
class SpectralSeries {
 public:
  explicit SpectralSeries(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("cube dimension must be >= 1");
    omega_.resize(static_cast<std::size_t>(n) + 1);
    nu_.resize(omega_.size());
    log_weight_.resize(omega_.size());
    weight_.resize(omega_.size());
    for (int m = 0; m <= n; ++m) {
      // 2 asin(sqrt(m/n)) keeps full relative accuracy near m = 0 and m = n,
      // where acos(1 - 2m/n) does not.
      const double omega = 2.0 * std::asin(std::sqrt(static_cast<double>(m) / n));
      omega_[m] = omega;
      nu_[m] = std::numbers::pi / 2.0 - omega;
      log_weight_[m] = log_binomial_weight(n, m);
      weight_[m] = std::exp(log_weight_[m]);
    }
    omega_[0] = 0.0;
    omega_[n] = std::numbers::pi;
  }

  int n() const { return n_; }
  const std::vector<double>& omega() const { return omega_; }
  const std::vector<double>& nu() const { return nu_; }
  const std::vector<double>& log_weight() const { return log_weight_; }
  const std::vector<double>& weight() const { return weight_; }

 private:
  int n_;
  std::vector<double> omega_;
  std::vector<double> nu_;
  std::vector<double> log_weight_;
  std::vector<double> weight_;
};

/// Amplitude on the opposite corner after t unmeasured steps from a corner:
/// alpha_t = 2^-n sum_m C(n,m) (-1)^m cos(omega_m t).
///
/// Exactly zero when t < n or t - n is odd (locality and periodicity).
inline double alpha(const SpectralSeries& series, long t) {
  if (t < 0) throw std::invalid_argument("negative time");
  const int n = series.n();
  if (t < n || ((t - n) & 1L) != 0) return 0.0;
  CompensatedSum<double> sum;
  const double time = static_cast<double>(t);
  for (int m = 0; m <= n; ++m) {
    const double term = series.weight()[m] * std::cos(series.omega()[m] * time);
    sum += (m & 1) ? -term : term;
  }
  return sum.value();
}

/// Return amplitude <f|U^t|f> = 2^-n sum_m C(n,m) cos(omega_m t); exactly
/// zero for odd t.
inline double gamma(const SpectralSeries& series, long t) {
  if (t < 0) throw std::invalid_argument("negative time");
  if ((t & 1L) != 0) return 0.0;
  if (t == 0) return 1.0;
  CompensatedSum<double> sum;
  const double time = static_cast<double>(t);
  for (int m = 0; m <= series.n(); ++m) sum += series.weight()[m] * std::cos(series.omega()[m] * time);
  return sum.value();
}

inline std::vector<double> alpha_series(const SpectralSeries& series, int horizon) {
  std::vector<double> out(static_cast<std::size_t>(horizon) + 1);
  for (int t = 0; t <= horizon; ++t) out[t] = alpha(series, t);
  return out;
}

inline std::vector<double> gamma_series(const SpectralSeries& series, int horizon) {
  std::vector<double> out(static_cast<std::size_t>(horizon) + 1);
  for (int t = 0; t <= horizon; ++t) out[t] = gamma(series, t);
  return out;
}

/// |g(2t) - g(2t+2)| with g(2t) = (-1)^t gamma_{2t}. Valid for 2t <= pi n / 2.
inline double gamma_tilde_difference(const SpectralSeries& series, long t) {
  if (t < 0 || 2.0 * t > std::numbers::pi * series.n() / 2.0) {
    throw std::domain_error("gamma_tilde_difference needs 0 <= 2t <= pi n / 2");
  }
  const double here = ((t & 1L) ? -1.0 : 1.0) * gamma(series, 2 * t);
  const double next = (((t + 1) & 1L) ? -1.0 : 1.0) * gamma(series, 2 * t + 2);
  return std::abs(here - next);
}

/// One eigenvector of S_k C (Grover coin) with non-zero overlap on the
/// symmetric coin state, together with its eigenvalue and the overlap
/// coefficient of the corner state |Psi_in> (x) |0...0>.
struct EigenPair {
  Position k = 0;
  int weight = 0;
  Complex lambda;
  std::vector<Complex> w;
  /// <w_k (x) k~ | Psi_in (x) 0...0>; the conjugate pair carries conj(overlap).
  Complex overlap;
  /// k = 0...0 or 1...1: a single real eigenvector (uniform), lambda = +-1.
  bool degenerate = false;
};

inline EigenPair eigenpair(int n, Position k) {
  if (n < 1 || !fits(k, n)) throw std::invalid_argument("eigen index outside the cube");
  EigenPair out;
  out.k = k;
  out.weight = hamming_weight(k);
  const int m = out.weight;
  const double scale = std::pow(2.0, -0.5 * n);
  out.w.assign(static_cast<std::size_t>(n), Complex{});
  if (m == 0 || m == n) {
    out.degenerate = true;
    out.lambda = m == 0 ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
    for (auto& entry : out.w) entry = 1.0 / std::sqrt(static_cast<double>(n));
    out.overlap = scale;
    return out;
  }
  const double omega = 2.0 * std::asin(std::sqrt(static_cast<double>(m) / n));
  out.lambda = {std::cos(omega), std::sin(omega)};
  const double one = 1.0 / (std::sqrt(2.0) * std::sqrt(static_cast<double>(m)));
  const double zero = 1.0 / (std::sqrt(2.0) * std::sqrt(static_cast<double>(n - m)));
  for (int l = 0; l < n; ++l) {
    out.w[l] = ((k >> l) & 1U) ? Complex{one, 0.0} : Complex{0.0, -zero};
  }
  // <w_k|Psi_in> = (sqrt(m) + i sqrt(n - m)) / sqrt(2n), times <k~|0...0> = 2^{-n/2}.
  out.overlap = Complex{std::sqrt(static_cast<double>(m)), std::sqrt(static_cast<double>(n - m))} /
                std::sqrt(2.0 * n) * scale;
  return out;
}

/// In-place unnormalized Walsh-Hadamard transform over 2^n entries.
inline void walsh_hadamard(std::vector<Complex>& v) {
  const std::size_t size = v.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const Complex lo = v[i];
        const Complex hi = v[i + half];
        v[i] = lo + hi;
        v[i + half] = lo - hi;
      }
    }
  }
}

/// Rebuilds the corner start state from its eigen-expansion
/// sum_k (a_k w_k + a_k* w_k*) (x) |k~>, then Fourier-transforms to positions.
inline WalkState reconstruct_initial(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("reconstruct_initial supports 1 <= n <= 12");
  const LatticeSpec spec(n);
  const std::size_t positions = spec.positions();
  std::vector<std::vector<Complex>> by_direction(static_cast<std::size_t>(n), std::vector<Complex>(positions));
  for (Position k = 0; k < positions; ++k) {
    const EigenPair pair = eigenpair(n, k);
    for (int l = 0; l < n; ++l) {
      // Degenerate classes have a single eigenvector; the generic pair sums to 2 Re.
      const Complex coeff = pair.degenerate ? pair.overlap * pair.w[l]
                                            : 2.0 * std::real(pair.overlap * pair.w[l]);
      by_direction[l][k] = coeff;
    }
  }
  WalkState state(spec);
  const double scale = std::pow(2.0, -0.5 * n);
  for (int l = 0; l < n; ++l) {
    walsh_hadamard(by_direction[l]);
    for (Position x = 0; x < positions; ++x) state.at(l, x) = by_direction[l][x] * scale;
  }
  return state;
}

}  // namespace qwalk
