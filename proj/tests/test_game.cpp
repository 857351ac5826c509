#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>

#include "gcg/game.hpp"

using namespace gcg;

namespace {

// Three singleton blocks in a row: 0 - 1 - 2.
BlockGraph chain3() {
  BlockGraph g;
  g.rows = 1;
  g.cols = 3;
  g.num_blocks = 3;
  g.cell_block = {0, 1, 2};
  g.cells = {{0}, {1}, {2}};
  g.neighbors = {{1}, {0, 2}, {1}};
  return g;
}

GameState all_white(int n_blocks, int n_colors) {
  GameState s;
  s.num_colors = n_colors;
  s.colors.assign(n_blocks, kWhite);
  s.hidden_palette.assign(n_blocks, -1);
  return s;
}

GridConfig desk_config(std::uint64_t seed = 0) {
  GridConfig c;
  c.seed = seed;
  return c;  // defaults: 4x5, 10 blocks, 10 colors, 0.3 hidden
}

}  // namespace

TEST_CASE("init_state hides floor(fraction * blocks) blocks with palette colors") {
  const GridConfig cfg = desk_config();
  Rng grid_rng(3);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  Rng rng(4);
  const GameState s = init_state(g, cfg, rng);
  REQUIRE(s.num_colors == 10);
  int hidden = 0;
  for (int b = 0; b < g.num_blocks; ++b) {
    if (s.colors[b] == kHidden) {
      ++hidden;
      CHECK(s.hidden_palette[b] >= 0);
      CHECK(s.hidden_palette[b] < 10);
    } else {
      CHECK(s.colors[b] == kWhite);
      CHECK(s.hidden_palette[b] == -1);
    }
  }
  CHECK(hidden == 3);  // floor(0.3 * 10)
  CHECK_FALSE(is_terminal(s));
}

TEST_CASE("hidden_fraction extremes") {
  GridConfig cfg = desk_config();
  Rng grid_rng(3);
  const BlockGraph g = generate_grid(cfg, grid_rng);

  cfg.hidden_fraction = 0.0;
  Rng r1(1);
  const GameState none = init_state(g, cfg, r1);
  CHECK(std::count(none.colors.begin(), none.colors.end(), kHidden) == 0);

  cfg.hidden_fraction = 1.0;
  Rng r2(1);
  const GameState all = init_state(g, cfg, r2);
  CHECK(std::count(all.colors.begin(), all.colors.end(), kHidden) == g.num_blocks);
}

TEST_CASE("hidden block selection is uniform-ish across seeds") {
  const GridConfig cfg = desk_config();
  Rng grid_rng(3);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  std::vector<int> hits(g.num_blocks, 0);
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    Rng rng(1000 + t);
    const GameState s = init_state(g, cfg, rng);
    for (int b = 0; b < g.num_blocks; ++b) {
      if (s.colors[b] == kHidden) ++hits[b];
    }
  }
  for (int b = 0; b < g.num_blocks; ++b) {
    const double freq = static_cast<double>(hits[b]) / trials;
    CHECK(freq > 0.25);
    CHECK(freq < 0.35);
  }
}

TEST_CASE("reveal_phase draws k uniformly and applies palette colors") {
  std::set<std::size_t> seen_k;
  for (int t = 0; t < 200; ++t) {
    GameState s = all_white(3, 3);
    s.colors[0] = kHidden;
    s.hidden_palette[0] = 2;
    s.colors[2] = kHidden;
    s.hidden_palette[2] = 1;
    Rng rng(t);
    const auto revealed = reveal_phase(s, rng);
    seen_k.insert(revealed.size());
    REQUIRE(revealed.size() <= 2);
    CHECK(std::is_sorted(revealed.begin(), revealed.end()));
    for (int b : revealed) {
      CHECK((b == 0 || b == 2));
      CHECK(s.colors[b] == (b == 0 ? 2 : 1));
      CHECK(s.hidden_palette[b] == -1);
    }
    CHECK(s.colors[1] == kWhite);
  }
  CHECK(seen_k == std::set<std::size_t>{0, 1, 2});

  GameState s = all_white(2, 3);
  Rng rng(0);
  CHECK(reveal_phase(s, rng).empty());
}

TEST_CASE("painting scores gains against differently-colored neighbors") {
  const BlockGraph g = chain3();
  GameState s = all_white(3, 3);
  s.colors[0] = 0;
  s.colors[2] = 0;
  Rng rng(1);
  // Middle block, different color: two gains.
  const StepOutcome out = step(g, s, {{1, 1}, {0, 2}}, rng);
  CHECK(out.events[0].gains == 2);
  CHECK(out.events[0].penalties == 0);
  CHECK(out.base_reward[0] == doctest::Approx(2.0));
  // Player 2 repainted a colored block: sanction only.
  CHECK(out.events[1].sanctioned);
  CHECK(out.base_reward[1] == doctest::Approx(-10.0));
  CHECK(out.next.colors[0] == 0);  // unchanged
  CHECK(out.terminal);
}

TEST_CASE("painting scores penalties against same-colored neighbors") {
  const BlockGraph g = chain3();
  GameState s = all_white(3, 3);
  s.colors[0] = 0;
  s.colors[2] = 0;
  Rng rng(1);
  const SingleOutcome out = step_single(g, s, {1, 0}, rng);
  CHECK(out.events.penalties == 2);
  CHECK(out.base_reward == doctest::Approx(-4.0));
  CHECK(out.terminal);
}

TEST_CASE("mixed neighborhood nets gains against penalties") {
  const BlockGraph g = chain3();
  GameState s = all_white(3, 3);
  s.colors[0] = 0;
  s.colors[2] = 1;
  Rng rng(1);
  const SingleOutcome out = step_single(g, s, {1, 0}, rng);
  CHECK(out.events.gains == 1);
  CHECK(out.events.penalties == 1);
  CHECK(out.base_reward == doctest::Approx(1.0 - 2.0));
}

TEST_CASE("player 1's paint lands before player 2's evaluation") {
  const BlockGraph g = chain3();
  const GameState s = all_white(3, 3);
  Rng rng(1);
  const StepOutcome out = step(g, s, {{1, 0}, {2, 0}}, rng);
  CHECK(out.base_reward[0] == doctest::Approx(0.0));  // neighbors still white
  CHECK(out.events[1].penalties == 1);                // sees player 1's fresh paint
  CHECK(out.base_reward[1] == doctest::Approx(-2.0));
}

TEST_CASE("collisions delay both and a fair coin picks the painter") {
  const BlockGraph g = chain3();
  const GameState s = all_white(3, 3);
  std::set<int> painters;
  for (int t = 0; t < 50; ++t) {
    Rng rng(t);
    const StepOutcome out = step(g, s, {{1, 0}, {1, 2}}, rng);
    CHECK(out.events[0].delayed);
    CHECK(out.events[1].delayed);
    REQUIRE((out.painter == 0 || out.painter == 1));
    painters.insert(out.painter);
    const int loser = 1 - out.painter;
    CHECK(out.base_reward[loser] == doctest::Approx(-1.0));
    CHECK(out.base_reward[out.painter] == doctest::Approx(-1.0));  // -1 delay + 0 paint
    CHECK(out.next.colors[1] == (out.painter == 0 ? 0 : 2));
  }
  CHECK(painters.size() == 2);
}

TEST_CASE("collision on a colored block sanctions only the painter") {
  const BlockGraph g = chain3();
  GameState s = all_white(3, 3);
  s.colors[1] = 0;
  Rng rng(9);
  const StepOutcome out = step(g, s, {{1, 1}, {1, 2}}, rng);
  const int w = out.painter, l = 1 - w;
  CHECK(out.base_reward[w] == doctest::Approx(-11.0));  // delay + sanction
  CHECK(out.base_reward[l] == doctest::Approx(-1.0));
  CHECK(out.events[w].sanctioned);
  CHECK_FALSE(out.events[l].sanctioned);
  CHECK(out.next.colors[1] == 0);
}

TEST_CASE("painting a hidden block is sanctioned and preserves its palette") {
  const BlockGraph g = chain3();
  GameState s = all_white(3, 3);
  s.colors[2] = 0;  // leaves exactly one white, one hidden
  s.colors[1] = kHidden;
  s.hidden_palette[1] = 2;
  for (int t = 0; t < 40; ++t) {
    Rng rng(t);
    const SingleOutcome out = step_single(g, s, {1, 0}, rng);
    if (std::find(out.revealed.begin(), out.revealed.end(), 1) == out.revealed.end()) {
      CHECK(out.events.sanctioned);
      CHECK(out.base_reward == doctest::Approx(-10.0));
      CHECK(out.next.colors[1] == kHidden);
      CHECK(out.next.hidden_palette[1] == 2);
    } else {
      // Revealed this round, so the paint attempt hits a colored block.
      CHECK(out.next.colors[1] == 2);
      CHECK(out.events.sanctioned);
    }
  }
}

TEST_CASE("reveals happening in the same round count for scoring") {
  const BlockGraph g = chain3();
  GameState s = all_white(3, 3);
  s.colors[1] = kHidden;
  s.hidden_palette[1] = 0;
  bool saw_reveal = false, saw_none = false;
  for (int t = 0; t < 60; ++t) {
    Rng rng(t);
    const SingleOutcome out = step_single(g, s, {0, 0}, rng);
    if (out.next.colors[1] == 0) {
      saw_reveal = true;
      CHECK(out.events.penalties == 1);
      CHECK(out.base_reward == doctest::Approx(-2.0));
    } else {
      saw_none = true;
      CHECK(out.base_reward == doctest::Approx(0.0));
    }
  }
  CHECK(saw_reveal);
  CHECK(saw_none);
}

TEST_CASE("terminal states reject further steps") {
  const BlockGraph g = chain3();
  GameState s = all_white(3, 3);
  s.colors = {0, 1, 2};
  CHECK(is_terminal(s));
  Rng rng(1);
  CHECK_THROWS_AS(step(g, s, {{0, 0}, {1, 0}}, rng), std::logic_error);
  CHECK_THROWS_AS(step_single(g, s, {0, 0}, rng), std::logic_error);
}

TEST_CASE("invalid block and color ids are rejected") {
  const BlockGraph g = chain3();
  const GameState s = all_white(3, 3);
  Rng rng(1);
  CHECK_THROWS_AS(step(g, s, {{3, 0}, {1, 0}}, rng), std::out_of_range);
  CHECK_THROWS_AS(step(g, s, {{0, 3}, {1, 0}}, rng), std::out_of_range);
  CHECK_THROWS_AS(step(g, s, {{0, 0}, {-1, 0}}, rng), std::out_of_range);
  CHECK_THROWS_AS(step_single(g, s, {0, -1}, rng), std::out_of_range);
}

TEST_CASE("encode_state one-hot layout") {
  GameState s = all_white(3, 3);
  s.colors = {2, kWhite, kHidden};
  s.hidden_palette[2] = 0;
  const auto x = encode_state(s);
  REQUIRE(x.size() == 15);  // 3 blocks x (3 colors + white + hidden)
  CHECK(x[0 * 5 + 2] == 1.0);
  CHECK(x[1 * 5 + 3] == 1.0);  // white slot
  CHECK(x[2 * 5 + 4] == 1.0);  // hidden slot
  CHECK(std::accumulate(x.begin(), x.end(), 0.0) == doctest::Approx(3.0));
}

TEST_CASE("action index round-trips") {
  for (int b = 0; b < 10; ++b) {
    for (int c = 0; c < 10; ++c) {
      const Action a{b, c};
      const int idx = action_index(a, 10);
      const Action back = action_from_index(idx, 10);
      CHECK(back.block == b);
      CHECK(back.color == c);
    }
  }
}

TEST_CASE("random joint play preserves invariants and terminates") {
  const GridConfig cfg = desk_config(11);
  Rng grid_rng(11);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  for (int t = 0; t < 50; ++t) {
    Rng rng(500 + t);
    GameState s = init_state(g, cfg, rng);
    int rounds = 0;
    while (!is_terminal(s) && rounds < 10000) {
      const JointAction joint{
          {static_cast<int>(rng.below(g.num_blocks)), static_cast<int>(rng.below(10))},
          {static_cast<int>(rng.below(g.num_blocks)), static_cast<int>(rng.below(10))}};
      const int open_before =
          static_cast<int>(std::count_if(s.colors.begin(), s.colors.end(),
                                         [](int c) { return c < 0; }));
      const StepOutcome out = step(g, s, joint, rng);
      const int open_after =
          static_cast<int>(std::count_if(out.next.colors.begin(), out.next.colors.end(),
                                         [](int c) { return c < 0; }));
      CHECK(open_after <= open_before);
      // Colored blocks never change color.
      for (int b = 0; b < g.num_blocks; ++b) {
        if (s.colors[b] >= 0) CHECK(out.next.colors[b] == s.colors[b]);
      }
      if (joint.p1.block == joint.p2.block) {
        CHECK(out.events[0].delayed);
        CHECK(out.events[1].delayed);
      }
      s = std::move(out.next);
      ++rounds;
    }
    CHECK(is_terminal(s));
  }
}

TEST_CASE("step is deterministic given the rng seed") {
  const GridConfig cfg = desk_config(21);
  Rng grid_rng(21);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  Rng ra(5), rb(5);
  GameState sa = init_state(g, cfg, ra);
  GameState sb = init_state(g, cfg, rb);
  CHECK(sa.colors == sb.colors);
  for (int i = 0; i < 20 && !is_terminal(sa); ++i) {
    const JointAction joint{{i % g.num_blocks, i % 10}, {(i + 3) % g.num_blocks, (i + 5) % 10}};
    const StepOutcome oa = step(g, sa, joint, ra);
    const StepOutcome ob = step(g, sb, joint, rb);
    CHECK(oa.next.colors == ob.next.colors);
    CHECK(oa.base_reward[0] == ob.base_reward[0]);
    CHECK(oa.base_reward[1] == ob.base_reward[1]);
    CHECK(oa.revealed == ob.revealed);
    sa = oa.next;
    sb = ob.next;
  }
}
