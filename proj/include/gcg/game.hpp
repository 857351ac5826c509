#pragma once

#include <array>
#include <vector>

#include "gcg/grid.hpp"
#include "gcg/rng.hpp"

namespace gcg {

// Block status values stored in GameState::colors alongside real color ids.
inline constexpr int kWhite = -1;   // revealed, not yet painted
inline constexpr int kHidden = -2;  // not yet revealed; reserved for the environment

// Per-event base reward contributions.
inline constexpr double kGainReward = 1.0;      // per differently-colored neighbor
inline constexpr double kPenaltyReward = -2.0;  // per same-colored neighbor
inline constexpr double kSanctionReward = -10.0;  // painting a non-white block
inline constexpr double kDelayReward = -1.0;      // each player, on a block collision

struct GameState {
  int num_colors = 0;
  std::vector<int> colors;          // per block: color id, kWhite or kHidden
  std::vector<int> hidden_palette;  // reveal color for hidden blocks, -1 otherwise
};

struct Action {
  int block = 0;
  int color = 0;
};

struct JointAction {
  Action p1, p2;
};

// What happened to one player during a step.
struct PlayerEvents {
  int gains = 0;
  int penalties = 0;
  bool sanctioned = false;
  bool delayed = false;
};

struct StepOutcome {
  GameState next;
  std::array<double, 2> base_reward{0.0, 0.0};
  std::array<PlayerEvents, 2> events{};
  std::vector<int> revealed;  // blocks revealed by the environment this round
  int painter = -1;           // on a collision, which player painted (0/1); -1 otherwise
  bool terminal = false;
};

// Single-agent variant used during training: no co-player, so no collisions
// or delays; the environment reveal phase still runs.
struct SingleOutcome {
  GameState next;
  double base_reward = 0.0;
  PlayerEvents events;
  std::vector<int> revealed;
  bool terminal = false;
};

// Flat action-space helpers: index = block * num_colors + color.
inline int action_index(const Action& a, int num_colors) { return a.block * num_colors + a.color; }
inline Action action_from_index(int index, int num_colors) {
  return Action{index / num_colors, index % num_colors};
}

// Draws the initial board: every block white except floor(hidden_fraction *
// num_blocks) uniformly-chosen hidden blocks, each with a palette color
// pre-assigned for its eventual reveal.
GameState init_state(const BlockGraph& graph, const GridConfig& config, Rng& rng);

// No white and no hidden blocks left.
bool is_terminal(const GameState& state);

// Environment phase: draws k ~ uniform{0..#hidden} and reveals k hidden
// blocks (chosen uniformly without replacement) to their palette colors.
// Mutates `state`; returns the revealed block ids in ascending order.
std::vector<int> reveal_phase(GameState& state, Rng& rng);

// One full round: reveal phase, then both actions applied simultaneously.
// If the players target the same block, both are delayed and a fair coin
// decides which one paints (the other's action is voided).  Otherwise the
// first player's paint lands before the second player's is evaluated.
// Painting any non-white block is sanctioned and leaves the board unchanged.
// Throws std::logic_error when `state` is terminal and std::out_of_range
// for invalid block or color ids.
StepOutcome step(const BlockGraph& graph, const GameState& state, const JointAction& joint,
                 Rng& rng);

SingleOutcome step_single(const BlockGraph& graph, const GameState& state, const Action& action,
                          Rng& rng);

// One-hot encoding consumed by the Q-network: |B| groups of num_colors + 2
// indicators (one per color, then white, then hidden).
std::vector<double> encode_state(const GameState& state);

}  // namespace gcg
