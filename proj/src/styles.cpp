#include "gcg/styles.hpp"

#include <stdexcept>

#include "gcg/errors.hpp"

namespace gcg {

const std::vector<StyleSpec>& style_catalog() {
  static const std::vector<StyleSpec> styles = {
      {"I", 0.0, 0.0, 0.0},
      {"C", -kStyleMagnitude, 0.0, 0.0},
      {"W", kStyleMagnitude, 0.0, 0.0},
      {"E", 0.0, 0.0, kStyleMagnitude},
      {"M", 0.0, 0.0, -kStyleMagnitude},
      {"L", 0.0, -kStyleMagnitude, 0.0},
      {"A", 0.0, kStyleMagnitude, 0.0},
      {"AE", 0.0, kStyleMagnitude, kStyleMagnitude},
      {"CA", -kStyleMagnitude, kStyleMagnitude, 0.0},
      {"LE", 0.0, -kStyleMagnitude, kStyleMagnitude},
      {"WL", kStyleMagnitude, -kStyleMagnitude, 0.0},
  };
  return styles;
}

const StyleSpec& find_style(const std::string& name) {
  for (const auto& s : style_catalog()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown style '" + name + "'");
}

// Integer division: the middle color of an odd palette falls on the cool side.
bool is_warm(int color, int num_colors) { return color < num_colors / 2; }

double preference_reward(const StyleSpec& style, const GameState& state, const Action& action,
                         const BlockGraph& graph) {
  if (action.block < 0 || action.block >= graph.num_blocks) {
    throw std::out_of_range("preference_reward: block id " + std::to_string(action.block) +
                            " outside [0, " + std::to_string(graph.num_blocks) + ")");
  }
  if (action.color < 0 || action.color >= state.num_colors) {
    throw std::out_of_range("preference_reward: color id " + std::to_string(action.color) +
                            " outside [0, " + std::to_string(state.num_colors) + ")");
  }

  const double tone_sign = is_warm(action.color, state.num_colors) ? 1.0 : -1.0;

  // Degree centrality rescaled to [-1, 1]; a graph with no adjacency at all
  // has nothing to prefer, so the term vanishes.
  const int max_deg = graph.max_degree();
  const double centrality =
      max_deg > 0 ? 2.0 * graph.degree(action.block) / max_deg - 1.0 : 0.0;

  int colored = 0, matching = 0;
  for (int c : state.colors) {
    if (c >= 0) {
      ++colored;
      if (c == action.color) ++matching;
    }
  }
  const double freq = colored > 0 ? static_cast<double>(matching) / colored : 0.0;

  return style.tone * tone_sign + style.difficulty * centrality +
         style.approach * (1.0 - 2.0 * freq);
}

}  // namespace gcg
