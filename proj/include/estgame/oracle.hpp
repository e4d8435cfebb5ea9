#pragma once

// Brute-force verifiers, independent of the closed forms they are used to
// check: grid-search best response and equilibrium, and exact enumeration of
// the walk displacement moments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "estgame/equilibrium.hpp"

namespace estgame {

// Follower probability on the grid {i/n : i = 0..n}, n = round(1/step),
// minimizing the follower cost. Ties resolve toward the smaller probability.
inline double grid_br(const GameConstants& gc, double p1, double step = 1e-4) {
  if (!(step > 0.0 && step <= 1e-2))
    throw std::invalid_argument("grid_br: step must lie in (0, 1e-2]");
  const long n = std::lround(1.0 / step);
  double best_p2 = 0.0;
  ExtendedValue best = follower_cost(gc, PolicyPair(p1, 0.0));
  for (long i = 1; i <= n; ++i) {
    const double p2 = static_cast<double>(i) / static_cast<double>(n);
    const ExtendedValue cost = follower_cost(gc, PolicyPair(p1, p2));
    if (cost < best) {
      best = cost;
      best_p2 = p2;
    }
  }
  return best_p2;
}

// Exhaustive Stackelberg search: for every leader grid point, the follower
// replies with grid_br at the same resolution, and the leader keeps the
// cheapest pair. Tie-breaking matches solve: smaller p1, then smaller p2.
inline Equilibrium grid_se(const GameConstants& gc, double step = 1e-3) {
  if (!(step > 0.0 && step <= 1e-2))
    throw std::invalid_argument("grid_se: step must lie in (0, 1e-2]");
  const long n = std::lround(1.0 / step);
  double best_p1 = 0.0;
  double best_p2 = grid_br(gc, 0.0, step);
  ExtendedValue best = leader_cost(gc, PolicyPair(best_p1, best_p2));
  for (long i = 1; i <= n; ++i) {
    const double p1 = static_cast<double>(i) / static_cast<double>(n);
    const double p2 = grid_br(gc, p1, step);
    const ExtendedValue cost = leader_cost(gc, PolicyPair(p1, p2));
    if (cost < best) {  // scanning ascending p1 keeps the smaller-p1 winner
      best = cost;
      best_p1 = p1;
      best_p2 = p2;
    }
  }
  const PolicyPair policy(best_p1, best_p2);
  const Regime regime = gc.k2 <= 0.0
                            ? Regime::K2NonPos
                            : (gc.k1 < 0.0 ? Regime::K2PosK1Neg
                                           : Regime::K2PosK1NonNeg);
  return {policy, best, follower_cost(gc, policy), regime, {{policy, best}}};
}

// E[f(up, stay, down)] over the multinomial step counts of a lazy walk run
// for `age` steps with step probability `step_prob`. Exact 64-bit binomials
// and magnitude-ordered accumulation keep the absolute error near 1e-13 even
// at age 40 (861 compositions).
template <typename TermFn>
double enumerate_step_count_expectation(double step_prob, int age,
                                        TermFn&& term) {
  if (age < 1 || age > 40)
    throw std::invalid_argument(
        "enumerate_step_count_expectation: age must lie in [1, 40]");
  if (!(step_prob > 0.0 && step_prob < 0.5))
    throw std::invalid_argument(
        "enumerate_step_count_expectation: step_prob outside (0, 0.5)");

  // Pascal rows up to `age`; the largest entry (age 40) fits in 64 bits.
  std::vector<std::vector<std::uint64_t>> choose(age + 1);
  for (int row = 0; row <= age; ++row) {
    choose[row].assign(row + 1, 1);
    for (int k = 1; k < row; ++k)
      choose[row][k] = choose[row - 1][k - 1] + choose[row - 1][k];
  }

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(age + 1) * (age + 2) / 2);
  for (int up = 0; up <= age; ++up) {
    for (int down = 0; up + down <= age; ++down) {
      const int stay = age - up - down;
      const double weight = static_cast<double>(choose[age][up]) *
                            static_cast<double>(choose[age - up][down]) *
                            std::pow(step_prob, up + down) *
                            std::pow(1.0 - 2.0 * step_prob, stay);
      terms.push_back(weight * term(up, stay, down));
    }
  }
  std::sort(terms.begin(), terms.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

// Exact expected squared displacement after `age` steps, by enumeration.
// Equals 2 * age * step_prob; asserting that identity is the caller's job.
inline double enumerate_conditional_error(double step_prob, int age) {
  return enumerate_step_count_expectation(
      step_prob, age, [](int up, int, int down) {
        const double displacement = up - down;
        return displacement * displacement;
      });
}

}  // namespace estgame
