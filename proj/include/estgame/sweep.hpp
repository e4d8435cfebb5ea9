#pragma once

// Tabulation of the reduced leader objective over a p1 grid, for CSV export
// and plotting. The exact region boundaries are inserted as extra rows so the
// kinks of the piecewise objective are always represented.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "estgame/best_response.hpp"

namespace estgame {

struct SweepRow {
  double p1;
  double br_p2;
  ExtendedValue j1;
  RegionTag region;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending p1
  std::size_t argmin = 0;      // ties: smallest p1
};

inline SweepResult build_sweep(const GameConstants& gc, double p1_step = 1e-3) {
  if (!(p1_step > 0.0 && p1_step <= 0.5))
    throw std::invalid_argument("build_sweep: p1_step must lie in (0, 0.5]");
  const long n = std::lround(1.0 / p1_step);
  std::vector<double> grid;
  grid.reserve(n + 3);
  for (long i = 0; i <= n; ++i)
    grid.push_back(static_cast<double>(i) / static_cast<double>(n));
  if (gc.k2 > 0.0) {
    const RegionBounds rb = bounds(gc.k2);
    grid.push_back(rb.p1_lower);
    grid.push_back(rb.p1_upper);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  SweepResult sweep;
  sweep.rows.reserve(grid.size());
  for (double p1 : grid) {
    const ReducedCost rc = leader_reduced_cost(gc, p1);
    sweep.rows.push_back({p1, follower_br(gc.k2, p1).p2, rc.cost, rc.region});
    if (sweep.rows.back().j1 < sweep.rows[sweep.argmin].j1)
      sweep.argmin = sweep.rows.size() - 1;
  }
  return sweep;
}

}  // namespace estgame
