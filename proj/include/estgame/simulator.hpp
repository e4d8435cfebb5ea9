#pragma once

// Stochastic protocol simulator: both walks evolve, each player samples with
// its stationary probability, and any sample reveals both current states to
// both sides at once. Produces the empirical statistics that the closed forms
// are validated against.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "estgame/game.hpp"

namespace estgame {

// Uniform double in [0, 1) from the top 53 bits of one engine draw. Every
// stochastic choice in the simulator consumes exactly one of these, so runs
// are reproducible from the seed alone.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One lazy random walk transition: +-1 with probability step_prob each, else
// stay. Requires 0 < step_prob < 0.5. Consumes one draw.
inline std::int64_t step_walk(std::int64_t state, double step_prob,
                              std::mt19937_64& rng) {
  const double u = uniform01(rng);
  if (u < step_prob) return state + 1;
  if (u < 2.0 * step_prob) return state - 1;
  return state;
}

struct SimConfig {
  GameParams params;
  PolicyPair policy;
  std::uint64_t horizon;
  std::uint64_t seed;
  int age_cap;

  SimConfig(GameParams params_, PolicyPair policy_, std::uint64_t horizon_,
            std::uint64_t seed_, int age_cap_ = 64)
      : params(params_),
        policy(policy_),
        horizon(horizon_),
        seed(seed_),
        age_cap(age_cap_) {
    if (horizon < 1)
      throw std::invalid_argument("SimConfig: horizon must be >= 1");
    if (age_cap < 1)
      throw std::invalid_argument("SimConfig: age_cap must be >= 1");
  }
};

// Empirical statistics of one trajectory. Player index 0 refers to player 1
// estimating walk 2; index 1 to player 2 estimating walk 1. Ages share one
// histogram because any sample resets both players simultaneously.
struct SimResult {
  std::array<double, 2> mean_sq_error{};
  std::array<double, 2> sample_rate{};
  std::vector<std::uint64_t> age_visits;  // ages 0..age_cap, then overflow
  std::vector<double> age_histogram;      // age_visits / horizon; sums to 1
  std::vector<double> cond_error_by_age;  // mean squared error of player 1
                                          // per age 0..age_cap; NaN unvisited
  bool divergent = false;  // reset probability was zero
  std::uint64_t horizon = 0;
  int age_cap = 0;
};

// Per step: (i) both walks advance, (ii) each player draws its sampling
// action, (iii) any sample resets both estimates and both ages, otherwise the
// ages grow, (iv) squared errors are measured after the exchange. Draw order
// within a step: walk 1, walk 2, sample 1, sample 2. Estimates start exact
// (age 0). Equal configs give bitwise-identical results.
inline SimResult run(const SimConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const double p1 = cfg.policy.p1;
  const double p2 = cfg.policy.p2;
  const auto cap = static_cast<std::uint64_t>(cfg.age_cap);

  std::int64_t walk1 = 0, walk2 = 0;
  std::int64_t seen1 = 0, seen2 = 0;  // walk values at the last revelation
  std::uint64_t age1 = 0, age2 = 0;
  double sq_err1 = 0.0, sq_err2 = 0.0;
  std::uint64_t samples1 = 0, samples2 = 0;
  std::vector<std::uint64_t> visits(cap + 2, 0);
  std::vector<double> cond_sum(cap + 1, 0.0);

  for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
    walk1 = step_walk(walk1, cfg.params.alpha1, rng);
    walk2 = step_walk(walk2, cfg.params.alpha2, rng);
    const bool u1 = uniform01(rng) < p1;
    const bool u2 = uniform01(rng) < p2;
    samples1 += u1;
    samples2 += u2;
    if (u1 || u2) {
      seen1 = walk1;
      seen2 = walk2;
      age1 = 0;
      age2 = 0;
    } else {
      ++age1;
      ++age2;
    }
    if (age1 != age2)
      throw std::logic_error("run: the shared-age invariant broke");
    const double err1 = static_cast<double>(walk2 - seen2);
    const double err2 = static_cast<double>(walk1 - seen1);
    sq_err1 += err1 * err1;
    sq_err2 += err2 * err2;
    const std::uint64_t bucket = age1 > cap ? cap + 1 : age1;
    ++visits[bucket];
    if (bucket <= cap) cond_sum[bucket] += err1 * err1;
  }

  SimResult result;
  const auto steps = static_cast<double>(cfg.horizon);
  result.mean_sq_error = {sq_err1 / steps, sq_err2 / steps};
  result.sample_rate = {static_cast<double>(samples1) / steps,
                        static_cast<double>(samples2) / steps};
  result.age_visits = std::move(visits);
  result.age_histogram.reserve(result.age_visits.size());
  for (std::uint64_t count : result.age_visits)
    result.age_histogram.push_back(static_cast<double>(count) / steps);
  result.cond_error_by_age.reserve(cond_sum.size());
  for (std::uint64_t age = 0; age <= cap; ++age) {
    const std::uint64_t count = result.age_visits[age];
    result.cond_error_by_age.push_back(
        count == 0 ? std::numeric_limits<double>::quiet_NaN()
                   : cond_sum[age] / static_cast<double>(count));
  }
  result.divergent = reset_probability(cfg.policy) == 0.0;
  result.horizon = cfg.horizon;
  result.age_cap = cfg.age_cap;
  return result;
}

// Empirical mean squared error of player 1's estimate at a given shared age.
// Empty when the run visited that age fewer than 100 times.
inline std::optional<double> conditional_error(const SimResult& result,
                                               int age) {
  if (age < 0 || age > result.age_cap)
    throw std::invalid_argument("conditional_error: age beyond recorded cap");
  if (result.age_visits[static_cast<std::size_t>(age)] < 100)
    return std::nullopt;
  return result.cond_error_by_age[static_cast<std::size_t>(age)];
}

// Per-player empirical cost from the run's time averages: own estimation
// error, minus alpha times the error the opponent suffers (information the
// player kept concealed), plus sampling cost times the realized rate.
inline std::pair<double, double> empirical_cost(const SimResult& result,
                                                const GameParams& params) {
  const double j1 = result.mean_sq_error[0] -
                    params.alpha * result.mean_sq_error[1] +
                    params.c1 * result.sample_rate[0];
  const double j2 = result.mean_sq_error[1] -
                    params.alpha * result.mean_sq_error[0] +
                    params.c2 * result.sample_rate[1];
  return {j1, j2};
}

}  // namespace estgame
