#pragma once

// Stackelberg equilibrium solver. The sign of k2 picks the regime: for
// k2 <= 0 the follower never samples and the leader optimizes a single convex
// objective; for k2 > 0 the reduced leader objective is piecewise and the
// minimum lies in a finite candidate set built from the region boundaries.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "estgame/best_response.hpp"

namespace estgame {

enum class Regime { K2NonPos, K2PosK1Neg, K2PosK1NonNeg };

inline const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::K2NonPos: return "k2_nonpositive";
    case Regime::K2PosK1Neg: return "k2_positive_k1_negative";
    case Regime::K2PosK1NonNeg: return "k2_positive_k1_nonnegative";
  }
  return "unknown";
}

struct Candidate {
  PolicyPair policy;
  ExtendedValue leader_value;
};

// Equilibrium sampling pair plus both players' long-run costs and the
// candidate audit trail the argmin ran over.
struct Equilibrium {
  PolicyPair policy;
  ExtendedValue leader_value;
  ExtendedValue follower_value;
  Regime regime;
  std::vector<Candidate> candidates;
};

// k2 <= 0: the follower's objective increases in p2, so it never samples.
// The leader then minimizes c1*(k1*(1-p1)/p1 + p1) over [0, 1], whose
// clamped optimum is min{sqrt(max{k1, 0}), 1}.
inline Equilibrium solve_k2_nonpositive(const GameConstants& gc) {
  if (gc.k2 > 0.0)
    throw std::invalid_argument("solve_k2_nonpositive: requires k2 <= 0");
  const double p1 = std::min(std::sqrt(std::max(gc.k1, 0.0)), 1.0);
  const PolicyPair policy(p1, 0.0);
  Equilibrium eq{policy, leader_cost(gc, policy), follower_cost(gc, policy),
                 Regime::K2NonPos, {}};
  eq.candidates.push_back({policy, eq.leader_value});
  return eq;
}

// k2 > 0: finite candidate list for the leader argmin. For k1 < 0 the
// interior piece is concave, so only its endpoints compete; for k1 >= 0 the
// interior piece increases and the silent piece has an interior optimum at
// sqrt(k1), clamped into [p1_upper, 1]. Coinciding candidates (p1_lower = 0)
// are removed.
inline std::vector<PolicyPair> candidate_set(const GameConstants& gc) {
  if (!(gc.k2 > 0.0))
    throw std::invalid_argument("candidate_set: requires k2 > 0");
  const RegionBounds rb = bounds(gc.k2);
  std::vector<PolicyPair> candidates;
  auto push_unique = [&candidates](const PolicyPair& c) {
    for (const auto& seen : candidates)
      if (std::abs(seen.p1 - c.p1) <= kBoundarySnap &&
          std::abs(seen.p2 - c.p2) <= kBoundarySnap)
        return;
    candidates.push_back(c);
  };
  push_unique(PolicyPair(0.0, follower_br(gc.k2, 0.0).p2));
  push_unique(PolicyPair(rb.p1_lower, follower_br(gc.k2, rb.p1_lower).p2));
  if (gc.k1 < 0.0) {
    push_unique(PolicyPair(rb.p1_upper, follower_br(gc.k2, rb.p1_upper).p2));
  } else {
    const double p1 = std::min(std::max(std::sqrt(gc.k1), rb.p1_upper), 1.0);
    push_unique(PolicyPair(p1, 0.0));
  }
  return candidates;
}

// k2 > 0: evaluate the leader cost at every candidate and keep the argmin.
// Ties break toward smaller p1, then smaller p2, so outputs are reproducible.
inline Equilibrium solve_k2_positive(const GameConstants& gc) {
  if (!(gc.k2 > 0.0))
    throw std::invalid_argument("solve_k2_positive: requires k2 > 0");
  const std::vector<PolicyPair> candidates = candidate_set(gc);
  std::vector<Candidate> audit;
  audit.reserve(candidates.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    audit.push_back({candidates[i], leader_cost(gc, candidates[i])});
    const Candidate& a = audit[i];
    const Candidate& b = audit[best];
    const bool better =
        a.leader_value < b.leader_value ||
        (a.leader_value == b.leader_value &&
         (a.policy.p1 < b.policy.p1 ||
          (a.policy.p1 == b.policy.p1 && a.policy.p2 < b.policy.p2)));
    if (i > 0 && better) best = i;
  }
  const Regime regime =
      gc.k1 < 0.0 ? Regime::K2PosK1Neg : Regime::K2PosK1NonNeg;
  return {audit[best].policy, audit[best].leader_value,
          follower_cost(gc, audit[best].policy), regime, audit};
}

// The follower cost has a unique minimizer for every committed p1 (strictly
// convex in p2 wherever q > 0), so no indifference tie-breaking on the
// follower side is needed.
inline Equilibrium solve(const GameConstants& gc) {
  return gc.k2 <= 0.0 ? solve_k2_nonpositive(gc) : solve_k2_positive(gc);
}

}  // namespace estgame
