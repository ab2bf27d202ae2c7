#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "qwalk/qwalk.hpp"
#include "unit/test_support.hpp"

namespace qwalk {
namespace {

TEST(LatticeSpec, RejectsZeroDimension) { EXPECT_THROW(LatticeSpec(0), std::invalid_argument); }

TEST(LatticeSpec, CoinDimensionFollowsRestingFlag) {
  EXPECT_EQ(LatticeSpec(5).coin_dim(), 5);
  EXPECT_EQ(LatticeSpec(5, true).coin_dim(), 6);
  EXPECT_EQ(LatticeSpec(5).positions(), 32u);
}

TEST(Bitstring, FirstCharacterIsFirstCoordinate) {
  EXPECT_EQ(parse_bitstring("100"), 1u);
  EXPECT_EQ(parse_bitstring("01"), 2u);
  EXPECT_EQ(format_bitstring(parse_bitstring("1010"), 4), "1010");
  EXPECT_THROW(parse_bitstring("10a"), std::invalid_argument);
  EXPECT_THROW(parse_bitstring(""), std::invalid_argument);
}

TEST(Horizon, ParityMatchedRoundsToNearestOfRightParity) {
  EXPECT_EQ(default_horizon(100), 158);  // pi*50 = 157.08
  EXPECT_EQ(default_horizon(10), 16);    // 15.71 -> 16
  EXPECT_EQ(default_horizon(1), 1);      // 1.57 -> 1
  EXPECT_EQ(parity_matched(5.0, 0), 6);  // tie between 4 and 6 goes up
  for (int n = 1; n < 300; ++n) {
    const int t = default_horizon(n);
    EXPECT_EQ((t - n) % 2, 0);
    EXPECT_LE(std::abs(t - M_PI * n / 2), 1.0 + 1e-12);
  }
}

TEST(MakeInitial, SingleDirectionCube) {
  const WalkState s = make_initial(LatticeSpec(1), 0);
  EXPECT_EQ(s.at(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(s.at(0, 1), Complex(0.0, 0.0));
}

TEST(MakeInitial, TwoCubeSplitsEvenly) {
  const WalkState s = make_initial(LatticeSpec(2), parse_bitstring("00"));
  EXPECT_NEAR(s.at(0, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.at(1, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.squared_norm(), 1.0, 1e-15);
}

TEST(MakeInitial, FourCubeHasUnitNorm) {
  const Position x = parse_bitstring("1010");
  const WalkState s = make_initial(LatticeSpec(4), x);
  int nonzero = 0;
  double sum = 0.0;
  for (const Complex& a : s.amps()) {
    if (a != Complex{}) {
      ++nonzero;
      EXPECT_DOUBLE_EQ(a.real(), 0.5);
    }
    sum += std::norm(a);
  }
  EXPECT_EQ(nonzero, 4);
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(MakeInitial, RestingDirectionGetsEqualWeight) {
  const WalkState s = make_initial(LatticeSpec(3, true), 0);
  for (int d = 0; d < 4; ++d) EXPECT_NEAR(s.at(d, 0).real(), 0.5, 1e-15);
}

TEST(MakeInitial, RejectsOversizedStart) { EXPECT_THROW(make_initial(LatticeSpec(3), 8), std::invalid_argument); }

TEST(ProjectMeasure, StateAtTargetStopsWithCertainty) {
  const LatticeSpec spec(3);
  const auto outcome = project_measure(make_initial(spec, 5), PositionProjector(5));
  EXPECT_NEAR(outcome.stop_amplitude_norm, 1.0, 1e-15);
  EXPECT_EQ(outcome.residual.squared_norm(), 0.0);
}

TEST(ProjectMeasure, StateAwayFromTargetIsUntouched) {
  const LatticeSpec spec(3);
  const WalkState s = make_initial(spec, 2);
  const auto outcome = project_measure(s, PositionProjector(5));
  EXPECT_EQ(outcome.stop_amplitude_norm, 0.0);
  EXPECT_EQ(max_abs_difference(outcome.residual, s), 0.0);
}

TEST(ProjectMeasure, ResidualIsNotRenormalized) {
  const LatticeSpec spec(2);
  WalkState s(spec);
  s.at(0, 0) = 0.6;
  s.at(1, 3) = 0.8;
  const auto outcome = project_measure(s, PositionProjector(3));
  EXPECT_NEAR(outcome.stop_amplitude_norm, 0.8, 1e-15);
  EXPECT_NEAR(outcome.residual.squared_norm(), 0.36, 1e-15);
}

TEST(ProjectMeasure, ProjectorAlgebraOnRandomStates) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const LatticeSpec spec(1 + trial % 6, trial % 3 == 0);
    const WalkState s = testing::random_state(spec, rng, false);
    const PositionProjector proj(static_cast<Position>(trial) % spec.positions());
    const WalkState hit = proj.hit(s);
    const WalkState miss = proj.miss(s);
    EXPECT_NEAR(hit.squared_norm() + miss.squared_norm(), s.squared_norm(), 1e-12);
    // Pi0^2 = Pi0, Pi0 Pi1 = 0, Pi0 + Pi1 = 1.
    EXPECT_EQ(max_abs_difference(proj.hit(hit), hit), 0.0);
    EXPECT_EQ(proj.hit(miss).squared_norm(), 0.0);
    WalkState sum = hit;
    for (std::size_t i = 0; i < sum.amps().size(); ++i) sum.amps()[i] += miss.amps()[i];
    EXPECT_EQ(max_abs_difference(sum, s), 0.0);
  }
}

TEST(ProjectMeasureSymmetric, SplitsOverlapAndResidual) {
  std::mt19937_64 rng(11);
  const LatticeSpec spec(4);
  const WalkState s = testing::random_state(spec, rng);
  const auto outcome = project_measure_symmetric(s, 9);
  const WalkState f = make_initial(spec, 9);
  EXPECT_NEAR(std::abs(outcome.amplitude - inner(f, s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inner(f, outcome.residual)), 0.0, 1e-15);
  EXPECT_NEAR(std::norm(outcome.amplitude) + outcome.residual.squared_norm(), 1.0, 1e-12);
}

TEST(PositionMarginal, InitialStateIsIndicator) {
  const auto marginal = position_marginal(make_initial(LatticeSpec(3), 6));
  for (Position x = 0; x < 8; ++x) EXPECT_NEAR(marginal[x], x == 6 ? 1.0 : 0.0, 1e-15);
}

TEST(PositionMarginal, UniformStateIsUniform) {
  const LatticeSpec spec(4);
  WalkState s(spec);
  for (auto& a : s.amps()) a = 1.0 / std::sqrt(static_cast<double>(spec.size()));
  for (double p : position_marginal(s)) EXPECT_NEAR(p, 1.0 / 16.0, 1e-15);
}

TEST(PositionMarginal, SumsToSquaredNorm) {
  std::mt19937_64 rng(3);
  const WalkState s = testing::random_state(LatticeSpec(5, true), rng, false);
  double sum = 0.0;
  for (double p : position_marginal(s)) sum += p;
  EXPECT_NEAR(sum, s.squared_norm(), 1e-12);
}

TEST(PositionMarginal, EvolvedSymmetricStateDependsOnlyOnWeight) {
  for (int n : {3, 6, 8}) {
    const auto op = grover_walk(n);
    for (int t : {n, n + 2, 3 * n}) {
      const auto marginal = position_marginal(evolve(op, make_initial(op.spec(), 0), t));
      std::map<int, double> by_weight;
      for (Position x = 0; x < marginal.size(); ++x) {
        const int w = hamming_weight(x);
        if (!by_weight.contains(w)) by_weight[w] = marginal[x];
        EXPECT_NEAR(marginal[x], by_weight[w], 1e-10) << "n=" << n << " t=" << t << " x=" << x;
      }
    }
  }
}

}  // namespace
}  // namespace qwalk
