#pragma once

#include <cstdint>
#include <vector>

#include "gcg/game.hpp"
#include "gcg/grid.hpp"
#include "gcg/learner.hpp"
#include "gcg/payoff.hpp"
#include "gcg/rng.hpp"

namespace gcg {

// Games that make no progress (e.g. untrained policies stuck on sanctioned
// moves) are cut off after this many rounds and scored as they stand.
inline constexpr int kMaxMatchRounds = 500;

struct MatchResult {
  double p1 = 0.0;        // accumulated base reward, seat 1
  double p2 = 0.0;
  double violation = 0.0; // end-of-game fraction of adjacent same-color pairs
};

// Plays one full game with `first` in seat 1 and `second` in seat 2, both
// acting greedily.  All stochasticity (reveals, collision coins) comes from
// `rng`.
MatchResult play_match(const BlockGraph& graph, const GridConfig& config, const Policy& first,
                       const Policy& second, Rng& rng, int max_rounds = kMaxMatchRounds);

struct EstimateResult {
  PayoffTensor payoffs;
  std::vector<double> violations;  // row-major n*n, aligned with payoffs
};

// Mean over `runs` games of one ordered profile.  Game g draws from the
// stream "sim/<row>/<col>/<g>" split off `master_seed`, so every profile is
// reproducible in isolation and scheduling cannot change results.
MatchResult simulate_profile(const BlockGraph& graph, const GridConfig& config,
                             const Policy& row, const Policy& col, long long runs,
                             std::uint64_t master_seed);

// Full empirical payoff table over every ordered policy pair.  Seating is
// fixed by profile order: entry (i, j) always puts policy i in seat 1.
// Profiles are distributed across `threads` workers; output is identical to
// the serial run.  Policies must share the board fingerprint, otherwise
// ConfigError.
EstimateResult estimate_payoffs(const std::vector<Policy>& policies, const BlockGraph& graph,
                                const GridConfig& config, long long runs,
                                std::uint64_t master_seed, int threads = 1);

// Mean end-of-game violation fraction for one ordered profile, drawing game
// seeds from `rng`.
double violation_stats(const BlockGraph& graph, const GridConfig& config, const Policy& first,
                       const Policy& second, long long runs, Rng& rng);

}  // namespace gcg
