#include "estgame/equilibrium.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "estgame/oracle.hpp"
#include "estgame/simulator.hpp"  // uniform01 for seeded instance sampling
#include "test_util.hpp"

namespace {

using estgame::candidate_set;
using estgame::Equilibrium;
using estgame::follower_br;
using estgame::follower_cost;
using estgame::GameConstants;
using estgame::grid_se;
using estgame::leader_cost;
using estgame::leader_reduced_cost;
using estgame::PolicyPair;
using estgame::Regime;
using estgame::solve;
using estgame::solve_k2_nonpositive;
using estgame::solve_k2_positive;
using estgame::uniform01;

constexpr double kInf = std::numeric_limits<double>::infinity();

double value_gap(estgame::ExtendedValue a, estgame::ExtendedValue b) {
  if (a.value == b.value) return 0.0;
  return std::abs(a.value - b.value);
}

TEST(SolveK2NonpositiveTest, ClosedFormPolicies) {
  const Equilibrium both_negative = solve_k2_nonpositive(GameConstants(-1.0, -1.0, 1.0, 1.0));
  EXPECT_EQ(both_negative.policy.p1, 0.0);
  EXPECT_EQ(both_negative.policy.p2, 0.0);
  EXPECT_EQ(both_negative.leader_value.value, -kInf);
  EXPECT_EQ(both_negative.follower_value.value, -kInf);
  EXPECT_EQ(both_negative.regime, Regime::K2NonPos);

  const Equilibrium interior = solve_k2_nonpositive(GameConstants(0.25, -0.5, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(interior.policy.p1, 0.5);
  EXPECT_EQ(interior.policy.p2, 0.0);
  EXPECT_NEAR(interior.leader_value.value, 0.75, 1e-15);

  const Equilibrium clamped = solve_k2_nonpositive(GameConstants(4.0, -0.1, 1.0, 1.0));
  EXPECT_EQ(clamped.policy.p1, 1.0);
  EXPECT_EQ(clamped.policy.p2, 0.0);
  EXPECT_EQ(clamped.leader_value.value, 1.0);
}

TEST(SolveK2NonpositiveTest, RejectsPositiveK2) {
  EXPECT_THROW(solve_k2_nonpositive(GameConstants(1.0, 0.1, 1.0, 1.0)),
               std::invalid_argument);
}

TEST(SolveK2PositiveTest, RejectsNonpositiveK2) {
  EXPECT_THROW(solve_k2_positive(GameConstants(1.0, 0.0, 1.0, 1.0)),
               std::invalid_argument);
  EXPECT_THROW(candidate_set(GameConstants(1.0, -1.0, 1.0, 1.0)),
               std::invalid_argument);
}

TEST(CandidateSetTest, EnumeratesRegionEndpoints) {
  // k1 < 0 keeps all three endpoints.
  const auto negative = candidate_set(GameConstants(-2.0, 1.25, 1.0, 1.0));
  ASSERT_EQ(negative.size(), 3u);
  EXPECT_EQ(negative[0].p1, 0.0);
  EXPECT_EQ(negative[0].p2, 1.0);
  EXPECT_NEAR(negative[1].p1, 0.2, 1e-15);
  EXPECT_NEAR(negative[1].p2, 1.0, 1e-12);
  EXPECT_NEAR(negative[2].p1, 0.6558688457449498, 1e-12);
  EXPECT_EQ(negative[2].p2, 0.0);

  // p1_lower = 0 collapses the first two candidates.
  const auto collapsed = candidate_set(GameConstants(1.0, 0.1, 1.0, 1.0));
  ASSERT_EQ(collapsed.size(), 2u);
  EXPECT_EQ(collapsed[0].p1, 0.0);
  EXPECT_NEAR(collapsed[0].p2, 0.31622776601683794, 1e-12);
  EXPECT_EQ(collapsed[1].p1, 1.0);
  EXPECT_EQ(collapsed[1].p2, 0.0);

  const auto zero_k1 = candidate_set(GameConstants(0.0, 2.0, 1.0, 1.0));
  ASSERT_EQ(zero_k1.size(), 3u);
  EXPECT_EQ(zero_k1[0].p1, 0.0);
  EXPECT_EQ(zero_k1[0].p2, 1.0);
  EXPECT_DOUBLE_EQ(zero_k1[1].p1, 0.5);
  EXPECT_NEAR(zero_k1[1].p2, 1.0, 1e-12);
  EXPECT_NEAR(zero_k1[2].p1, 0.7320508075688772, 1e-12);
  EXPECT_EQ(zero_k1[2].p2, 0.0);
}

TEST(SolveK2PositiveTest, KnownEquilibria) {
  const Equilibrium free_riding = solve_k2_positive(GameConstants(1.0, 1.25, 1.0, 1.0));
  EXPECT_EQ(free_riding.policy.p1, 0.0);
  EXPECT_EQ(free_riding.policy.p2, 1.0);
  EXPECT_EQ(free_riding.leader_value.value, 0.0);
  EXPECT_EQ(free_riding.regime, Regime::K2PosK1NonNeg);

  const Equilibrium leader_samples = solve_k2_positive(GameConstants(1.0, 0.1, 1.0, 1.0));
  EXPECT_EQ(leader_samples.policy.p1, 1.0);
  EXPECT_EQ(leader_samples.policy.p2, 0.0);
  EXPECT_EQ(leader_samples.leader_value.value, 1.0);

  const Equilibrium upper_bound = solve_k2_positive(GameConstants(-2.0, 1.25, 1.0, 1.0));
  EXPECT_NEAR(upper_bound.policy.p1, 0.6558688457449498, 1e-12);
  EXPECT_EQ(upper_bound.policy.p2, 0.0);
  EXPECT_NEAR(upper_bound.leader_value.value, -0.3935213074469699, 1e-12);
  EXPECT_EQ(upper_bound.regime, Regime::K2PosK1Neg);
}

TEST(SolveTest, DispatchesAcrossRegimes) {
  const Equilibrium conceal = solve(GameConstants(-0.5, 1.25, 1.0, 1.0));
  EXPECT_EQ(conceal.policy.p1, 0.0);
  EXPECT_EQ(conceal.policy.p2, 1.0);
  EXPECT_EQ(conceal.leader_value.value, 0.0);

  const Equilibrium zero = solve(GameConstants(0.0, 0.0, 1.0, 1.0));
  EXPECT_EQ(zero.policy.p1, 0.0);
  EXPECT_EQ(zero.policy.p2, 0.0);
  EXPECT_EQ(zero.leader_value.value, 0.0);
  EXPECT_EQ(zero.follower_value.value, 0.0);
  EXPECT_EQ(zero.regime, Regime::K2NonPos);

  const Equilibrium clamped = solve(GameConstants(2.0, -1.0, 1.0, 1.0));
  EXPECT_EQ(clamped.policy.p1, 1.0);
  EXPECT_EQ(clamped.policy.p2, 0.0);
}

std::vector<GameConstants> test_instances() {
  std::vector<GameConstants> instances = {
      {1.0, 1.25, 1.0, 1.0},  {1.0, 0.1, 1.0, 1.0},  {-0.5, 1.25, 1.0, 1.0},
      {-2.0, 1.25, 1.0, 1.0}, {-1.0, -1.0, 1.0, 1.0}, {0.0, 0.0, 1.0, 1.0},
      {2.0, -1.0, 1.0, 1.0},  {0.25, -0.5, 1.0, 1.0}, {0.0, 2.0, 1.0, 1.0}};
  std::mt19937_64 rng(987654321);
  for (int i = 0; i < 30; ++i)
    instances.emplace_back(-3.0 + 6.0 * uniform01(rng),
                           -3.0 + 6.0 * uniform01(rng), 1.0, 1.0);
  return instances;
}

// At the equilibrium the follower cannot profit from any grid deviation.
TEST(SolveTest, FollowerRationalityAtEquilibrium) {
  for (const GameConstants& gc : test_instances()) {
    const Equilibrium eq = solve(gc);
    const double at_response =
        follower_cost(gc, PolicyPair(eq.policy.p1, eq.policy.p2)).value;
    for (int j = 0; j <= 10000; ++j) {
      const double p2 = j / 10000.0;
      ASSERT_LE(at_response,
                follower_cost(gc, PolicyPair(eq.policy.p1, p2)).value + 1e-12)
          << "k1=" << gc.k1 << " k2=" << gc.k2 << " p2=" << p2;
    }
  }
}

// The equilibrium leader value never exceeds the reduced objective anywhere.
TEST(SolveTest, LeaderValueDominatesReducedObjective) {
  for (const GameConstants& gc : test_instances()) {
    const Equilibrium eq = solve(gc);
    for (int i = 0; i <= 1000; ++i) {
      const double p1 = i / 1000.0;
      const double reduced = leader_reduced_cost(gc, p1).cost.value;
      const double slack =
          std::isfinite(reduced) ? 1e-9 * std::max(1.0, std::abs(reduced)) : 0.0;
      ASSERT_LE(eq.leader_value.value, reduced + slack)
          << "k1=" << gc.k1 << " k2=" << gc.k2 << " p1=" << p1;
    }
  }
}

TEST(SolveTest, AuditTrailIsConsistent) {
  for (const GameConstants& gc : test_instances()) {
    const Equilibrium eq = solve(gc);
    ASSERT_FALSE(eq.candidates.empty());
    estgame::ExtendedValue best = eq.candidates.front().leader_value;
    for (const estgame::Candidate& c : eq.candidates)
      best = std::min(best, c.leader_value);
    EXPECT_EQ(eq.leader_value, best);
    EXPECT_EQ(eq.policy.p2, follower_br(gc.k2, eq.policy.p1).p2);
    EXPECT_EQ(eq.follower_value.value,
              follower_cost(gc, eq.policy).value);
  }
}

// Analytic equilibria against the exhaustive grid oracle on 200 random
// instances: leader values agree within the coarse tolerance, and policies
// agree unless two candidates are themselves nearly tied.
TEST(SolveTest, AgreesWithGridOracle) {
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 200; ++i) {
    const double k1 = -3.0 + 6.0 * uniform01(rng);
    const double k2 = -3.0 + 6.0 * uniform01(rng);
    const GameConstants gc(k1, k2, 1.0, 1.0);
    const Equilibrium analytic = solve(gc);
    const Equilibrium grid = grid_se(gc, 1e-3);
    const double tol = 1e-2 * gc.c1 * (1.0 + std::abs(k1));
    ASSERT_LE(value_gap(analytic.leader_value, grid.leader_value), tol)
        << "k1=" << k1 << " k2=" << k2;

    bool near_tie = false;
    for (const estgame::Candidate& c : analytic.candidates) {
      const bool is_chosen = c.policy.p1 == analytic.policy.p1 &&
                             c.policy.p2 == analytic.policy.p2;
      if (!is_chosen &&
          value_gap(c.leader_value, analytic.leader_value) <= tol)
        near_tie = true;
    }
    if (!near_tie) {
      EXPECT_NEAR(analytic.policy.p1, grid.policy.p1, 5e-3)
          << "k1=" << k1 << " k2=" << k2;
      EXPECT_NEAR(analytic.policy.p2, grid.policy.p2, 5e-3)
          << "k1=" << k1 << " k2=" << k2;
    }
  }
}

// The argmin is invariant under separate rescaling of both sampling costs.
TEST(SolveTest, PolicyInvariantUnderCostScaling) {
  std::mt19937_64 rng(13579);
  for (int i = 0; i < 50; ++i) {
    const double k1 = -3.0 + 6.0 * uniform01(rng);
    const double k2 = -3.0 + 6.0 * uniform01(rng);
    const Equilibrium base = solve(GameConstants(k1, k2, 1.0, 1.0));
    for (double lambda : {0.1, 10.0}) {
      for (double mu : {0.1, 10.0}) {
        const Equilibrium scaled = solve(GameConstants(k1, k2, lambda, mu));
        EXPECT_EQ(scaled.policy.p1, base.policy.p1)
            << "k1=" << k1 << " k2=" << k2 << " lambda=" << lambda;
        EXPECT_EQ(scaled.policy.p2, base.policy.p2)
            << "k1=" << k1 << " k2=" << k2 << " mu=" << mu;
      }
    }
  }
}

// As k2 shrinks toward zero from above, the positive-k2 solver lands on the
// nonpositive-regime closed form.
TEST(SolveK2PositiveTest, ApproachesNonpositiveRegimeLimit) {
  for (double k1 : {0.25, 1.0, 4.0}) {
    const Equilibrium eq = solve_k2_positive(GameConstants(k1, 1e-6, 1.0, 1.0));
    EXPECT_EQ(eq.policy.p1, std::min(std::sqrt(k1), 1.0)) << "k1=" << k1;
    EXPECT_EQ(eq.policy.p2, 0.0) << "k1=" << k1;
  }
}

}  // namespace
