#pragma once

// Core types and closed-form cost algebra for a two-player remote-estimation
// sampling game: two independent lazy +-1 random walks, per-step probabilistic
// sampling, and mutual state revelation whenever either player samples.

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace estgame {

// Extended real used for long-run costs, which diverge when neither player
// ever samples. Scaling an infinite value by a coefficient follows the
// 0 * inf = 0 convention: a player with zero incentive constant pays nothing
// even though the estimation error itself diverges.
struct ExtendedValue {
  double value = 0.0;

  constexpr ExtendedValue() = default;
  constexpr ExtendedValue(double v) : value(v) {}  // NOLINT: implicit by design

  static constexpr ExtendedValue pos_infinity() {
    return {std::numeric_limits<double>::infinity()};
  }
  static constexpr ExtendedValue neg_infinity() {
    return {-std::numeric_limits<double>::infinity()};
  }

  bool is_finite() const { return std::isfinite(value); }

  friend constexpr auto operator<=>(const ExtendedValue&,
                                    const ExtendedValue&) = default;
};

// coeff * x under the 0 * inf = 0 convention. For finite x this is plain
// multiplication.
inline ExtendedValue scale(double coeff, ExtendedValue x) {
  if (x.is_finite()) return coeff * x.value;
  if (coeff > 0.0) return x;
  if (coeff < 0.0) return -x.value;
  return 0.0;
}

// Physical parameterization of the game.
struct GameParams {
  double alpha1;  // walk step probability of player 1, in (0, 0.5)
  double alpha2;  // walk step probability of player 2, in (0, 0.5)
  double alpha;   // weight on the information revealed to the opponent, >= 0
  double c1;      // player 1's cost per sample, > 0
  double c2;      // player 2's cost per sample, > 0

  GameParams(double alpha1_, double alpha2_, double alpha_, double c1_,
             double c2_)
      : alpha1(alpha1_), alpha2(alpha2_), alpha(alpha_), c1(c1_), c2(c2_) {
    if (!(alpha1 > 0.0 && alpha1 < 0.5) || !(alpha2 > 0.0 && alpha2 < 0.5))
      throw std::invalid_argument(
          "GameParams: step probabilities must lie in (0, 0.5)");
    if (!(c1 > 0.0) || !(c2 > 0.0))
      throw std::invalid_argument(
          "GameParams: sampling costs must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument(
          "GameParams: revelation weight must be finite and >= 0");
  }
};

// Reduced parameterization. Equilibria depend on the physical parameters only
// through these constants, so the solver accepts any finite k1, k2 directly
// (including values with no feasible alpha counterpart).
struct GameConstants {
  double k1;  // leader incentive constant, any finite real
  double k2;  // follower incentive constant, any finite real
  double c1;
  double c2;

  GameConstants(double k1_, double k2_, double c1_, double c2_)
      : k1(k1_), k2(k2_), c1(c1_), c2(c2_) {
    if (!std::isfinite(k1) || !std::isfinite(k2))
      throw std::invalid_argument(
          "GameConstants: incentive constants must be finite");
    if (!(c1 > 0.0) || !(c2 > 0.0))
      throw std::invalid_argument(
          "GameConstants: sampling costs must be positive");
  }
};

// Stationary sampling probabilities.
struct PolicyPair {
  double p1;
  double p2;

  PolicyPair(double p1_, double p2_) : p1(p1_), p2(p2_) {
    if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
      throw std::invalid_argument(
          "PolicyPair: probabilities must lie in [0, 1]");
  }
};

inline GameConstants derive_constants(const GameParams& params) {
  return {2.0 * (params.alpha2 - params.alpha * params.alpha1) / params.c1,
          2.0 * (params.alpha1 - params.alpha * params.alpha2) / params.c2,
          params.c1, params.c2};
}

// Probability that neither player samples in a step.
inline double silence_probability(const PolicyPair& policy) {
  return (1.0 - policy.p1) * (1.0 - policy.p2);
}

// Probability that the shared age resets to zero in a step:
// 1 - (1-p1)(1-p2), written so that the boundary cases p_i in {0, 1} are
// produced exactly.
inline double reset_probability(const PolicyPair& policy) {
  const double q = policy.p1 + policy.p2 - policy.p1 * policy.p2;
  return std::clamp(q, 0.0, 1.0);
}

// Long-run mean squared error when estimating a walk with the given step
// probability through the sampling policy: 2*alpha*(1-q)/q with q the reset
// probability. Diverges when no one ever samples.
inline ExtendedValue average_error(double step_prob,
                                   const PolicyPair& policy) {
  if (!(step_prob > 0.0 && step_prob < 0.5))
    throw std::invalid_argument("average_error: step_prob outside (0, 0.5)");
  const double q = reset_probability(policy);
  if (q == 0.0) return ExtendedValue::pos_infinity();
  return 2.0 * step_prob * (silence_probability(policy) / q);
}

namespace detail {

// Shared cost kernel: unit_cost * (gain * (1-q)/q + p_own), with the
// 0 * inf = 0 convention at q = 0 (where necessarily p_own = 0).
inline ExtendedValue sampling_cost(double gain, double unit_cost, double p_own,
                                   const PolicyPair& policy) {
  const double q = reset_probability(policy);
  if (q == 0.0) {
    if (gain > 0.0) return ExtendedValue::pos_infinity();
    if (gain < 0.0) return ExtendedValue::neg_infinity();
    return unit_cost * p_own;
  }
  const double staleness = silence_probability(policy) / q;
  return unit_cost * (gain * staleness + p_own);
}

}  // namespace detail

// Long-run cost of player 1 (the leader): c1 * (k1*(1-q)/q + p1).
inline ExtendedValue leader_cost(const GameConstants& gc,
                                 const PolicyPair& policy) {
  return detail::sampling_cost(gc.k1, gc.c1, policy.p1, policy);
}

// Long-run cost of player 2 (the follower): c2 * (k2*(1-q)/q + p2).
inline ExtendedValue follower_cost(const GameConstants& gc,
                                   const PolicyPair& policy) {
  return detail::sampling_cost(gc.k2, gc.c2, policy.p2, policy);
}

// Partial derivative of the leader cost in p1, valid where q > 0:
// c1 * (1 - k1*(1-p2)/q^2).
inline double leader_cost_dp1(const GameConstants& gc,
                              const PolicyPair& policy) {
  const double q = reset_probability(policy);
  if (q == 0.0)
    throw std::invalid_argument("leader_cost_dp1: undefined at q = 0");
  return gc.c1 * (1.0 - gc.k1 * (1.0 - policy.p2) / (q * q));
}

// Partial derivative of the follower cost in p2, valid where q > 0.
inline double follower_cost_dp2(const GameConstants& gc,
                                const PolicyPair& policy) {
  const double q = reset_probability(policy);
  if (q == 0.0)
    throw std::invalid_argument("follower_cost_dp2: undefined at q = 0");
  return gc.c2 * (1.0 - gc.k2 * (1.0 - policy.p1) / (q * q));
}

}  // namespace estgame
