#pragma once

// Follower best response and the leader's reduced piecewise objective.
//
// For k2 > 0 the leader's probability axis splits into three regions: below
// p1_lower the follower samples every step, between the bounds it plays an
// interior response, and from p1_upper on it stays silent. For k2 <= 0 the
// follower never samples regardless of the leader.

#include <cmath>
#include <stdexcept>

#include "estgame/game.hpp"

namespace estgame {

enum class RegionTag { FollowerSaturated, Interior, FollowerSilent, NonpositiveK2 };

inline const char* to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::FollowerSaturated: return "saturated";
    case RegionTag::Interior: return "interior";
    case RegionTag::FollowerSilent: return "silent";
    case RegionTag::NonpositiveK2: return "k2_nonpositive";
  }
  return "unknown";
}

// Absolute snap tolerance when comparing a leader probability against the
// computed region boundaries, which are themselves rounded closed forms.
inline constexpr double kBoundarySnap = 1e-12;

// Region boundaries for k2 > 0. p1_lower = max{0, 1 - 1/k2} is where the
// saturated response ends; p1_upper = (-k2 + sqrt(k2^2 + 4*k2))/2 is where
// the response reaches zero. p1_upper < 1 always.
struct RegionBounds {
  double p1_lower;
  double p1_upper;
};

inline RegionBounds bounds(double k2) {
  if (!(k2 > 0.0))
    throw std::invalid_argument("bounds: defined only for k2 > 0");
  const double lower = std::max(0.0, 1.0 - 1.0 / k2);
  const double upper = 0.5 * (std::sqrt(k2 * k2 + 4.0 * k2) - k2);
  return {lower, upper};
}

struct BestResponse {
  double p2;
  RegionTag region;
};

// Follower's cost-minimizing sampling probability for a committed p1.
// Intervals are half-open: p1_lower belongs to the interior region and
// p1_upper to the silent region.
inline BestResponse follower_br(double k2, double p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0))
    throw std::invalid_argument("follower_br: p1 outside [0, 1]");
  if (k2 <= 0.0) return {0.0, RegionTag::NonpositiveK2};
  const RegionBounds rb = bounds(k2);
  if (p1 < rb.p1_lower - kBoundarySnap)
    return {1.0, RegionTag::FollowerSaturated};
  if (p1 < rb.p1_upper - kBoundarySnap) {
    const double idle = 1.0 - p1;  // > 1 - p1_upper > 0
    const double response = 1.0 - (1.0 - std::sqrt(k2 * idle)) / idle;
    return {std::clamp(response, 0.0, 1.0), RegionTag::Interior};
  }
  return {0.0, RegionTag::FollowerSilent};
}

struct ReducedCost {
  ExtendedValue cost;
  RegionTag region;
};

// Leader cost after substituting the follower best response, evaluated as an
// explicit piecewise closed form:
//   saturated:  c1 * p1
//   interior:   c1 * (k1/sqrt(k2) * (1-p1)^(-1/2) - k1 + p1)
//   silent:     c1 * (k1 * (1-p1)/p1 + p1)
// Agreement with leader_cost composed over follower_br is this module's
// primary correctness check and must not be short-circuited.
inline ReducedCost leader_reduced_cost(const GameConstants& gc, double p1) {
  if (!(p1 >= 0.0 && p1 <= 1.0))
    throw std::invalid_argument("leader_reduced_cost: p1 outside [0, 1]");
  if (gc.k2 <= 0.0)
    return {leader_cost(gc, PolicyPair(p1, 0.0)), RegionTag::NonpositiveK2};
  const RegionBounds rb = bounds(gc.k2);
  if (p1 < rb.p1_lower - kBoundarySnap)
    return {ExtendedValue(gc.c1 * p1), RegionTag::FollowerSaturated};
  if (p1 < rb.p1_upper - kBoundarySnap) {
    const double cost =
        gc.c1 * (gc.k1 / std::sqrt(gc.k2) / std::sqrt(1.0 - p1) - gc.k1 + p1);
    return {ExtendedValue(cost), RegionTag::Interior};
  }
  if (p1 == 0.0) {
    // Reachable only when p1_upper is below the snap tolerance; the own-age
    // term diverges with the sign of k1.
    if (gc.k1 > 0.0) return {ExtendedValue::pos_infinity(), RegionTag::FollowerSilent};
    if (gc.k1 < 0.0) return {ExtendedValue::neg_infinity(), RegionTag::FollowerSilent};
    return {ExtendedValue(0.0), RegionTag::FollowerSilent};
  }
  const double cost = gc.c1 * (gc.k1 * ((1.0 - p1) / p1) + p1);
  return {ExtendedValue(cost), RegionTag::FollowerSilent};
}

}  // namespace estgame
