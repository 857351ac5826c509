#include <doctest.h>

#include <cmath>

#include "gcg/egta.hpp"
#include "gcg/errors.hpp"

using namespace gcg;

namespace {

GridConfig tiny_config() {
  GridConfig c;
  c.rows = 2;
  c.cols = 2;
  c.num_blocks = 3;
  c.num_colors = 3;
  c.hidden_fraction = 0.34;
  c.seed = 40;
  return c;
}

// Random-weight policy; good enough for determinism and plumbing tests.
Policy make_policy(const std::string& name, const GridConfig& cfg, std::uint64_t seed) {
  Policy p;
  p.style = name;
  p.fingerprint = grid_fingerprint(cfg);
  p.num_blocks = cfg.num_blocks;
  p.num_colors = cfg.num_colors;
  p.net = QNetwork(cfg.num_blocks * (cfg.num_colors + 2), {8},
                   cfg.num_blocks * cfg.num_colors);
  Rng rng(seed);
  p.net.init(rng);
  return p;
}

}  // namespace

TEST_CASE("play_match is deterministic per rng seed") {
  const GridConfig cfg = tiny_config();
  Rng grid_rng(cfg.seed);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  const Policy a = make_policy("a", cfg, 1);
  const Policy b = make_policy("b", cfg, 2);

  Rng r1(77), r2(77), r3(78);
  const MatchResult m1 = play_match(g, cfg, a, b, r1);
  const MatchResult m2 = play_match(g, cfg, a, b, r2);
  CHECK(m1.p1 == m2.p1);
  CHECK(m1.p2 == m2.p2);
  CHECK(m1.violation == m2.violation);
  CHECK(m1.violation >= 0.0);
  CHECK(m1.violation <= 1.0);
  CHECK(std::isfinite(m1.p1));
  CHECK(std::isfinite(m1.p2));

  bool any_diff = false;
  for (int s = 0; s < 10 && !any_diff; ++s) {
    Rng r(200 + s);
    const MatchResult m = play_match(g, cfg, a, b, r);
    any_diff = m.p1 != m1.p1 || m.p2 != m1.p2;
  }
  CHECK(any_diff);
  (void)r3;
}

TEST_CASE("simulate_profile is reproducible and call-order independent") {
  const GridConfig cfg = tiny_config();
  Rng grid_rng(cfg.seed);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  const Policy a = make_policy("a", cfg, 1);
  const Policy b = make_policy("b", cfg, 2);

  const MatchResult r1 = simulate_profile(g, cfg, a, b, 25, 99);
  const MatchResult burn = simulate_profile(g, cfg, b, a, 10, 99);
  const MatchResult r2 = simulate_profile(g, cfg, a, b, 25, 99);
  CHECK(r1.p1 == r2.p1);
  CHECK(r1.p2 == r2.p2);
  CHECK(r1.violation == r2.violation);
  (void)burn;

  const MatchResult other_seed = simulate_profile(g, cfg, a, b, 25, 100);
  CHECK(r1.p1 != other_seed.p1);
  CHECK_THROWS_AS(simulate_profile(g, cfg, a, b, 0, 1), ConfigError);
}

TEST_CASE("estimate_payoffs fills every ordered profile with fixed seating") {
  const GridConfig cfg = tiny_config();
  Rng grid_rng(cfg.seed);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  const std::vector<Policy> pols = {make_policy("a", cfg, 1), make_policy("b", cfg, 2),
                                    make_policy("c", cfg, 3)};

  const EstimateResult est = estimate_payoffs(pols, g, cfg, 10, 7);
  REQUIRE(est.payoffs.n() == 3);
  CHECK(est.payoffs.strategies == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(est.violations.size() == 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(est.payoffs.runs[est.payoffs.idx(i, j)] == 10);
      CHECK(std::isfinite(est.payoffs.p1_at(i, j)));
      CHECK(est.violations[est.payoffs.idx(i, j)] >= 0.0);
      CHECK(est.violations[est.payoffs.idx(i, j)] <= 1.0);
    }
  }

  // Cell (i, j) only depends on the (row, col) stream labels, so reordering
  // the policy list permutes the table without changing any value.
  const EstimateResult swapped =
      estimate_payoffs({pols[1], pols[0], pols[2]}, g, cfg, 10, 7);
  CHECK(swapped.payoffs.p1_at(1, 0) == est.payoffs.p1_at(0, 1));
  CHECK(swapped.payoffs.p2_at(1, 0) == est.payoffs.p2_at(0, 1));
  CHECK(swapped.payoffs.p1_at(0, 1) == est.payoffs.p1_at(1, 0));
  CHECK(swapped.payoffs.p1_at(2, 2) == est.payoffs.p1_at(2, 2));
}

TEST_CASE("parallel estimation matches serial exactly") {
  const GridConfig cfg = tiny_config();
  Rng grid_rng(cfg.seed);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  const std::vector<Policy> pols = {make_policy("a", cfg, 1), make_policy("b", cfg, 2),
                                    make_policy("c", cfg, 3)};

  const EstimateResult serial = estimate_payoffs(pols, g, cfg, 8, 123, 1);
  const EstimateResult parallel = estimate_payoffs(pols, g, cfg, 8, 123, 4);
  CHECK(serial.payoffs.p1 == parallel.payoffs.p1);
  CHECK(serial.payoffs.p2 == parallel.payoffs.p2);
  CHECK(serial.violations == parallel.violations);
}

TEST_CASE("mismatched policies are refused") {
  const GridConfig cfg = tiny_config();
  Rng grid_rng(cfg.seed);
  const BlockGraph g = generate_grid(cfg, grid_rng);

  Policy wrong_board = make_policy("w", cfg, 1);
  wrong_board.num_blocks = 5;
  CHECK_THROWS_AS(estimate_payoffs({wrong_board}, g, cfg, 2, 1), ConfigError);

  Policy other_fp = make_policy("o", cfg, 2);
  other_fp.fingerprint = "0000000000000000";
  CHECK_THROWS_WITH_AS(estimate_payoffs({make_policy("a", cfg, 1), other_fp}, g, cfg, 2, 1),
                       doctest::Contains("fingerprint"), ConfigError);

  CHECK_THROWS_AS(
      estimate_payoffs({make_policy("a", cfg, 1), make_policy("a", cfg, 2)}, g, cfg, 2, 1),
      ConfigError);
  CHECK_THROWS_AS(estimate_payoffs({}, g, cfg, 2, 1), ConfigError);
}

TEST_CASE("violation_stats is deterministic given the rng state") {
  const GridConfig cfg = tiny_config();
  Rng grid_rng(cfg.seed);
  const BlockGraph g = generate_grid(cfg, grid_rng);
  const Policy a = make_policy("a", cfg, 1);
  const Policy b = make_policy("b", cfg, 2);

  Rng r1(55), r2(55);
  const double v1 = violation_stats(g, cfg, a, b, 20, r1);
  const double v2 = violation_stats(g, cfg, a, b, 20, r2);
  CHECK(v1 == v2);
  CHECK(v1 >= 0.0);
  CHECK(v1 <= 1.0);
  CHECK_THROWS_AS(violation_stats(g, cfg, a, b, 0, r1), ConfigError);
}
