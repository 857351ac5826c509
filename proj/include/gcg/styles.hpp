#pragma once

#include <string>
#include <vector>

#include "gcg/game.hpp"
#include "gcg/grid.hpp"

namespace gcg {

// A style is a point in (tone, difficulty, approach) space.  Each axis
// weights one shaping term added to the base game reward during training:
//   tone       > 0 prefers warm colors (first half of the palette), < 0 cool;
//   difficulty > 0 prefers high-degree blocks, < 0 low-degree;
//   approach   > 0 prefers colors rare on the board so far, < 0 common ones.
struct StyleSpec {
  std::string name;
  double tone = 0.0;
  double difficulty = 0.0;
  double approach = 0.0;
};

// Magnitude used by every non-neutral axis of the built-in styles.
inline constexpr double kStyleMagnitude = 0.7;

// The eleven built-in styles: Indifferent, Cool, Warm, Explorer, Mainstream,
// Lazy, Ambitious, and the pairwise blends AE, CA, LE, WL.
const std::vector<StyleSpec>& style_catalog();

// Looks up a built-in style by name; throws ConfigError for unknown names.
const StyleSpec& find_style(const std::string& name);

// Warm = first half of the palette (the middle color of an odd palette
// counts as cool).
bool is_warm(int color, int num_colors);

// Shaping term for taking `action` in `state`.  Pure function of the
// arguments; throws std::out_of_range for invalid block or color ids.
double preference_reward(const StyleSpec& style, const GameState& state, const Action& action,
                         const BlockGraph& graph);

}  // namespace gcg
