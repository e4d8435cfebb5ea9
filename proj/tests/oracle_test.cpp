#include "estgame/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "estgame/simulator.hpp"  // uniform01 for seeded instance sampling
#include "test_util.hpp"

namespace {

using estgame::enumerate_conditional_error;
using estgame::enumerate_step_count_expectation;
using estgame::Equilibrium;
using estgame::follower_br;
using estgame::GameConstants;
using estgame::grid_br;
using estgame::grid_se;
using estgame::solve;
using estgame::uniform01;

TEST(EnumerateTest, SmallAgeValues) {
  EXPECT_NEAR(enumerate_conditional_error(0.25, 1), 0.5, 1e-15);
  EXPECT_NEAR(enumerate_conditional_error(0.25, 4), 2.0, 1e-12);
  EXPECT_NEAR(enumerate_conditional_error(0.1, 10), 2.0, 1e-10);
}

// The enumerated squared displacement equals 2 * age * alpha across the full
// supported range.
TEST(EnumerateTest, MatchesLinearLawEverywhere) {
  for (double alpha : {0.05, 0.1, 0.25, 0.4, 0.49}) {
    for (int age = 1; age <= 40; ++age) {
      EXPECT_NEAR(enumerate_conditional_error(alpha, age), 2.0 * age * alpha,
                  1e-10)
          << "alpha=" << alpha << " age=" << age;
    }
  }
}

TEST(EnumerateTest, StepCountMomentsMatchMultinomial) {
  for (double alpha : {0.05, 0.1, 0.25, 0.4, 0.49}) {
    for (int age : {1, 5, 20, 40}) {
      const double mean_up = enumerate_step_count_expectation(
          alpha, age, [](int up, int, int) { return static_cast<double>(up); });
      EXPECT_NEAR(mean_up, age * alpha, 1e-10)
          << "alpha=" << alpha << " age=" << age;

      const double mean_up_sq = enumerate_step_count_expectation(
          alpha, age,
          [](int up, int, int) { return static_cast<double>(up) * up; });
      EXPECT_NEAR(mean_up_sq,
                  age * alpha * (1.0 - alpha) +
                      static_cast<double>(age) * age * alpha * alpha,
                  1e-10)
          << "alpha=" << alpha << " age=" << age;

      const double cross = enumerate_step_count_expectation(
          alpha, age,
          [](int up, int, int down) { return static_cast<double>(up) * down; });
      EXPECT_NEAR(cross,
                  -static_cast<double>(age) * alpha * alpha +
                      static_cast<double>(age) * age * alpha * alpha,
                  1e-10)
          << "alpha=" << alpha << " age=" << age;
    }
  }
}

TEST(EnumerateTest, RejectsOutOfRangeInputs) {
  EXPECT_THROW(enumerate_conditional_error(0.25, 0), std::invalid_argument);
  EXPECT_THROW(enumerate_conditional_error(0.25, 41), std::invalid_argument);
  EXPECT_THROW(enumerate_conditional_error(0.25, -3), std::invalid_argument);
  EXPECT_THROW(enumerate_conditional_error(0.0, 5), std::invalid_argument);
  EXPECT_THROW(enumerate_conditional_error(0.5, 5), std::invalid_argument);
}

TEST(GridBrTest, MatchesAnalyticBestResponse) {
  // Increasing objective: best grid response is zero.
  EXPECT_EQ(grid_br(GameConstants(0.0, -1.0, 1.0, 1.0), 0.5, 1e-3), 0.0);
  // Negative-coefficient divergence at (0, 0) still makes zero the argmin.
  EXPECT_EQ(grid_br(GameConstants(0.0, -1.0, 1.0, 1.0), 0.0, 1e-3), 0.0);

  const double at_04 = grid_br(GameConstants(0.0, 1.25, 1.0, 1.0), 0.4, 1e-3);
  EXPECT_NEAR(at_04, follower_br(1.25, 0.4).p2, 1e-3 + 1e-12);

  const double at_0 = grid_br(GameConstants(0.0, 0.25, 1.0, 1.0), 0.0, 1e-4);
  EXPECT_NEAR(at_0, 0.5, 1e-4 + 1e-12);

  for (double k2 : {0.1, 1.0, 2.5}) {
    for (double p1 : {0.0, 0.2, 0.55, 0.9}) {
      const GameConstants gc(0.0, k2, 1.0, 1.0);
      EXPECT_NEAR(grid_br(gc, p1, 1e-3), follower_br(k2, p1).p2, 1e-3 + 1e-12)
          << "k2=" << k2 << " p1=" << p1;
    }
  }
}

TEST(GridBrTest, RejectsCoarseSteps) {
  const GameConstants gc(0.0, 1.0, 1.0, 1.0);
  EXPECT_THROW(grid_br(gc, 0.5, 0.05), std::invalid_argument);
  EXPECT_THROW(grid_br(gc, 0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(grid_se(gc, 0.05), std::invalid_argument);
}

TEST(GridSeTest, FindsKnownEquilibria) {
  const Equilibrium silent = grid_se(GameConstants(-1.0, -1.0, 1.0, 1.0), 1e-3);
  EXPECT_EQ(silent.policy.p1, 0.0);
  EXPECT_EQ(silent.policy.p2, 0.0);

  const Equilibrium free_riding = grid_se(GameConstants(1.0, 1.25, 1.0, 1.0), 1e-3);
  EXPECT_EQ(free_riding.policy.p1, 0.0);
  EXPECT_EQ(free_riding.policy.p2, 1.0);
  EXPECT_EQ(free_riding.leader_value.value, 0.0);

  const Equilibrium upper = grid_se(GameConstants(-2.0, 1.25, 1.0, 1.0), 1e-3);
  EXPECT_NEAR(upper.policy.p1, 0.6558688457449498, 2e-3);
  EXPECT_EQ(upper.policy.p2, 0.0);
}

// The constrained analytic equilibrium can never genuinely beat the
// exhaustive grid; any advantage is bounded by grid discretization.
TEST(GridSeTest, NeverBeatenBeyondDiscretization) {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 30; ++i) {
    const double k1 = -3.0 + 6.0 * uniform01(rng);
    const double k2 = -3.0 + 6.0 * uniform01(rng);
    const GameConstants gc(k1, k2, 1.0, 1.0);
    const Equilibrium analytic = solve(gc);
    const Equilibrium grid = grid_se(gc, 1e-3);
    if (analytic.leader_value.value == grid.leader_value.value) continue;
    EXPECT_LE(analytic.leader_value.value,
              grid.leader_value.value + 1e-2 * (1.0 + std::abs(k1)))
        << "k1=" << k1 << " k2=" << k2;
  }
}

}  // namespace
