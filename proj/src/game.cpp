#include "gcg/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcg {

namespace {

void check_action(const Action& a, const BlockGraph& graph, int num_colors, const char* who) {
  if (a.block < 0 || a.block >= graph.num_blocks) {
    throw std::out_of_range(std::string(who) + ": block id " + std::to_string(a.block) +
                            " outside [0, " + std::to_string(graph.num_blocks) + ")");
  }
  if (a.color < 0 || a.color >= num_colors) {
    throw std::out_of_range(std::string(who) + ": color id " + std::to_string(a.color) +
                            " outside [0, " + std::to_string(num_colors) + ")");
  }
}

// Applies one player's paint attempt to `state` and scores it.  Sanctioned
// attempts (target not white) leave the board untouched.
double apply_paint(const BlockGraph& graph, GameState& state, const Action& a,
                   PlayerEvents& ev) {
  if (state.colors[a.block] != kWhite) {
    ev.sanctioned = true;
    return kSanctionReward;
  }
  state.colors[a.block] = a.color;
  for (int nb : graph.neighbors[a.block]) {
    const int c = state.colors[nb];
    if (c < 0) continue;  // white or hidden neighbors score nothing
    if (c != a.color) {
      ++ev.gains;
    } else {
      ++ev.penalties;
    }
  }
  return ev.gains * kGainReward + ev.penalties * kPenaltyReward;
}

}  // namespace

GameState init_state(const BlockGraph& graph, const GridConfig& config, Rng& rng) {
  config.validate();
  GameState s;
  s.num_colors = config.num_colors;
  s.colors.assign(graph.num_blocks, kWhite);
  s.hidden_palette.assign(graph.num_blocks, -1);

  const int n_hidden =
      static_cast<int>(std::floor(config.hidden_fraction * graph.num_blocks));
  std::vector<int> order(graph.num_blocks);
  for (int b = 0; b < graph.num_blocks; ++b) order[b] = b;
  for (int i = 0; i < n_hidden; ++i) {
    const int j =
        i + static_cast<int>(rng.below(static_cast<std::uint64_t>(graph.num_blocks - i)));
    std::swap(order[i], order[j]);
  }
  for (int i = 0; i < n_hidden; ++i) s.colors[order[i]] = kHidden;
  // Palette colors are drawn in ascending block order so the sequence is
  // independent of the selection shuffle above.
  for (int b = 0; b < graph.num_blocks; ++b) {
    if (s.colors[b] == kHidden) {
      s.hidden_palette[b] = static_cast<int>(rng.below(config.num_colors));
    }
  }
  return s;
}

bool is_terminal(const GameState& state) {
  return std::none_of(state.colors.begin(), state.colors.end(),
                      [](int c) { return c == kWhite || c == kHidden; });
}

std::vector<int> reveal_phase(GameState& state, Rng& rng) {
  std::vector<int> hidden;
  for (int b = 0; b < static_cast<int>(state.colors.size()); ++b) {
    if (state.colors[b] == kHidden) hidden.push_back(b);
  }
  if (hidden.empty()) return {};
  const auto k = rng.below(hidden.size() + 1);  // uniform over {0, .., #hidden}
  for (std::uint64_t i = 0; i < k; ++i) {
    const auto j = i + rng.below(hidden.size() - i);
    std::swap(hidden[i], hidden[j]);
  }
  hidden.resize(k);
  for (int b : hidden) {
    state.colors[b] = state.hidden_palette[b];
    state.hidden_palette[b] = -1;
  }
  std::sort(hidden.begin(), hidden.end());
  return hidden;
}

StepOutcome step(const BlockGraph& graph, const GameState& state, const JointAction& joint,
                 Rng& rng) {
  if (is_terminal(state)) throw std::logic_error("step: state is already terminal");
  check_action(joint.p1, graph, state.num_colors, "player 1");
  check_action(joint.p2, graph, state.num_colors, "player 2");

  StepOutcome out;
  out.next = state;
  out.revealed = reveal_phase(out.next, rng);

  if (joint.p1.block == joint.p2.block) {
    out.events[0].delayed = true;
    out.events[1].delayed = true;
    out.base_reward[0] = kDelayReward;
    out.base_reward[1] = kDelayReward;
    out.painter = rng.coin() ? 0 : 1;
    const Action& a = out.painter == 0 ? joint.p1 : joint.p2;
    out.base_reward[out.painter] += apply_paint(graph, out.next, a, out.events[out.painter]);
  } else {
    out.base_reward[0] = apply_paint(graph, out.next, joint.p1, out.events[0]);
    out.base_reward[1] = apply_paint(graph, out.next, joint.p2, out.events[1]);
  }
  out.terminal = is_terminal(out.next);
  return out;
}

SingleOutcome step_single(const BlockGraph& graph, const GameState& state, const Action& action,
                          Rng& rng) {
  if (is_terminal(state)) throw std::logic_error("step_single: state is already terminal");
  check_action(action, graph, state.num_colors, "player");

  SingleOutcome out;
  out.next = state;
  out.revealed = reveal_phase(out.next, rng);
  out.base_reward = apply_paint(graph, out.next, action, out.events);
  out.terminal = is_terminal(out.next);
  return out;
}

std::vector<double> encode_state(const GameState& state) {
  const int n_blocks = static_cast<int>(state.colors.size());
  const int width = state.num_colors + 2;
  std::vector<double> x(static_cast<std::size_t>(n_blocks) * width, 0.0);
  for (int b = 0; b < n_blocks; ++b) {
    const int c = state.colors[b];
    const int slot = c >= 0 ? c : (c == kWhite ? state.num_colors : state.num_colors + 1);
    x[static_cast<std::size_t>(b) * width + slot] = 1.0;
  }
  return x;
}

}  // namespace gcg
