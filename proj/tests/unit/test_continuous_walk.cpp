#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "qwalk/qwalk.hpp"

namespace qwalk {
namespace {

/// exp(i (t/n) A) with A the cube adjacency matrix, by Pade approximation.
Eigen::MatrixXcd dense_propagator(int n, double t) {
  const auto size = static_cast<Eigen::Index>(1) << n;
  Eigen::MatrixXcd generator = Eigen::MatrixXcd::Zero(size, size);
  for (Eigen::Index x = 0; x < size; ++x) {
    for (int bit = 0; bit < n; ++bit) generator(x ^ (Eigen::Index{1} << bit), x) = Complex(0.0, t / n);
  }
  return generator.exp();
}

TEST(ContinuousEvolve, IdentityAtTimeZero) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  std::vector<Complex> s(32);
  for (auto& a : s) a = {gauss(rng), gauss(rng)};
  const auto out = continuous_evolve(5, 0.0, s);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(out[i], s[i]);
}

TEST(ContinuousEvolve, TwoCubeHalfPeriod) {
  const auto out = continuous_evolve(2, std::numbers::pi, continuous_basis_state(2, 0));
  EXPECT_NEAR(std::abs(out[3]), 1.0, 1e-15);
}

TEST(ContinuousEvolve, MatchesMatrixExponential) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 6; ++n) {
    std::uniform_real_distribution<double> time(0.0, 2 * std::numbers::pi * n);
    for (int trial = 0; trial < 4; ++trial) {
      const double t = time(rng);
      const Eigen::MatrixXcd u = dense_propagator(n, t);
      const std::size_t size = std::size_t{1} << n;
      for (Position x = 0; x < size; ++x) {
        const auto dense = continuous_evolve(n, t, continuous_basis_state(n, x));
        const ProductState product = continuous_evolve(corner_product_state(n, x), t);
        for (Position y = 0; y < size; ++y) {
          const Complex expected = u(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
          ASSERT_NEAR(std::abs(dense[y] - expected), 0.0, 1e-10) << "n=" << n << " t=" << t;
          ASSERT_NEAR(std::abs(product_amplitude(product, y) - expected), 0.0, 1e-10);
        }
      }
    }
  }
}

TEST(ContinuousEvolve, Unitary) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (int n = 1; n <= 8; ++n) {
    std::vector<Complex> s(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : s) {
      a = {gauss(rng), gauss(rng)};
      norm += std::norm(a);
    }
    for (auto& a : s) a /= std::sqrt(norm);
    double out_norm = 0.0;
    for (const Complex& a : continuous_evolve(n, 3.7 * n, s)) out_norm += std::norm(a);
    EXPECT_NEAR(out_norm, 1.0, 1e-12);
  }
}

TEST(ContinuousAlpha, ClosedFormExamples) {
  for (int n : {1, 4, 7, 100, 1000}) {
    EXPECT_NEAR(std::abs(continuous_alpha(n, std::numbers::pi * n / 2)), 1.0, 1e-12);
    EXPECT_EQ(continuous_alpha(n, 0.0), Complex(0.0, 0.0));
    EXPECT_EQ(continuous_gamma(n, 0.0), 1.0);
  }
  for (int n : {1, 3, 10}) EXPECT_NEAR(continuous_gamma(n, n * std::numbers::pi / 3), std::pow(0.5, n), 1e-15);
}

TEST(ContinuousAlpha, PhaseIsIToTheN) {
  for (int n = 1; n <= 8; ++n) {
    const Complex a = continuous_alpha(n, 0.9 * n);
    const auto dense = continuous_evolve(n, 0.9 * n, continuous_basis_state(n, 0));
    EXPECT_NEAR(std::abs(a - dense[all_ones(n)]), 0.0, 1e-12);
  }
}

TEST(ContinuousAlpha, DenseOneShotIsCertainAtHalfPeriod) {
  for (int n = 1; n <= 6; ++n) {
    const auto dense = continuous_evolve(n, std::numbers::pi * n / 2, continuous_basis_state(n, 0));
    EXPECT_NEAR(std::norm(dense[all_ones(n)]), 1.0, 1e-9);
  }
}

TEST(ContinuousAlpha, PolynomialWindow) {
  const int n = 100;
  const double edge = std::pow(n, 0.4);
  for (double t : {std::numbers::pi * n / 2 - edge, std::numbers::pi * n / 2 + edge}) {
    EXPECT_GE(std::abs(continuous_alpha(n, t)), 1.0 - calibration::kContinuousWindow / std::pow(n, 0.2));
  }
}

TEST(ContinuousGamma, MatchesDenseReturnAmplitude) {
  for (int n = 1; n <= 6; ++n) {
    for (double t : {0.3, 1.0, 2.5 * n}) {
      const auto dense = continuous_evolve(n, t, continuous_basis_state(n, 0));
      EXPECT_NEAR(std::abs(dense[0] - continuous_gamma(n, t)), 0.0, 1e-10);
    }
  }
}

TEST(ContinuousWalk, MonotoneUpToHalfPeriod) {
  for (int n : {5, 16, 64}) {
    for (int t = 1; t <= std::numbers::pi * n / 2; ++t) {
      EXPECT_GE(std::abs(continuous_alpha(n, t)), std::abs(continuous_alpha(n, t - 1)));
      EXPECT_LE(continuous_gamma(n, t), continuous_gamma(n, t - 1));
    }
  }
}

TEST(ContinuousTrace, ArrivesEarlyWithSmallProbability) {
  const int n = 12;
  const MeasuredTrace trace = continuous_measured_trace(n, 1);
  EXPECT_GT(trace.total(), 0.0);
  EXPECT_NEAR(trace.total(), std::pow(std::sin(1.0 / n), 2 * n), 1e-30);
}

TEST(ContinuousTrace, MatchesDenseMeasuredWalk) {
  const int n = 6;
  const int horizon = 60;
  const MeasuredTrace recursion = continuous_measured_trace(n, horizon);
  const MeasuredTrace dense = continuous_measured_direct(n, 0, all_ones(n), horizon);
  for (int t = 0; t <= horizon; ++t) EXPECT_NEAR(std::abs(recursion.beta[t] - dense.beta[t]), 0.0, 1e-9) << t;
}

TEST(ContinuousTrace, StopAmplitudeLowerBound) {
  for (int n : {8, 32, 128}) {
    const int horizon = default_horizon(n);
    const MeasuredTrace trace = continuous_measured_trace(n, horizon);
    for (int t = 0; t < horizon; ++t) {
      EXPECT_GE(std::abs(trace.beta[t + 1]),
                std::abs(continuous_alpha(n, t + 1)) - std::abs(continuous_alpha(n, t)) - 1e-12);
    }
  }
}

TEST(ContinuousTrace, ConcurrentDecaysLikeInverseRoot) {
  std::vector<double> scaled;
  for (int n : {16, 64, 256}) {
    const double p = continuous_measured_trace(n, static_cast<int>(std::lround(std::numbers::pi * n / 2))).total();
    scaled.push_back(p * std::sqrt(n));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  EXPECT_LE(*hi, 2.0 * *lo);
  EXPECT_NEAR(scaled[0], 1.056, 2e-3);
}

}  // namespace
}  // namespace qwalk
