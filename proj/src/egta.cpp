#include "gcg/egta.hpp"

#include <atomic>
#include <string>
#include <thread>

#include "gcg/errors.hpp"

namespace gcg {

namespace {

double violation_fraction(const BlockGraph& graph, const GameState& state) {
  int pairs = 0, bad = 0;
  for (int a = 0; a < graph.num_blocks; ++a) {
    for (int b : graph.neighbors[a]) {
      if (b <= a) continue;  // each undirected pair once
      ++pairs;
      if (state.colors[a] >= 0 && state.colors[a] == state.colors[b]) ++bad;
    }
  }
  return pairs > 0 ? static_cast<double>(bad) / pairs : 0.0;
}

void check_policy(const Policy& p, const BlockGraph& graph, const GridConfig& config) {
  if (p.num_blocks != graph.num_blocks || p.num_colors != config.num_colors) {
    throw ConfigError("policy '" + p.style + "' was trained for a " +
                      std::to_string(p.num_blocks) + "-block, " +
                      std::to_string(p.num_colors) + "-color board, not " +
                      std::to_string(graph.num_blocks) + "/" +
                      std::to_string(config.num_colors));
  }
}

}  // namespace

MatchResult play_match(const BlockGraph& graph, const GridConfig& config, const Policy& first,
                       const Policy& second, Rng& rng, int max_rounds) {
  check_policy(first, graph, config);
  check_policy(second, graph, config);

  GameState state = init_state(graph, config, rng);
  MatchResult r;
  for (int round = 0; round < max_rounds && !is_terminal(state); ++round) {
    JointAction joint;
    joint.p1 = first.greedy(state);
    joint.p2 = second.greedy(state);
    StepOutcome out = step(graph, state, joint, rng);
    r.p1 += out.base_reward[0];
    r.p2 += out.base_reward[1];
    state = std::move(out.next);
  }
  r.violation = violation_fraction(graph, state);
  return r;
}

MatchResult simulate_profile(const BlockGraph& graph, const GridConfig& config,
                             const Policy& row, const Policy& col, long long runs,
                             std::uint64_t master_seed) {
  if (runs < 1) throw ConfigError("simulate_profile: runs must be >= 1");
  MatchResult sum;
  const std::string prefix = "sim/" + row.style + "/" + col.style + "/";
  for (long long g = 0; g < runs; ++g) {
    Rng rng = Rng::split(master_seed, prefix + std::to_string(g));
    const MatchResult m = play_match(graph, config, row, col, rng);
    sum.p1 += m.p1;
    sum.p2 += m.p2;
    sum.violation += m.violation;
  }
  sum.p1 /= static_cast<double>(runs);
  sum.p2 /= static_cast<double>(runs);
  sum.violation /= static_cast<double>(runs);
  return sum;
}

EstimateResult estimate_payoffs(const std::vector<Policy>& policies, const BlockGraph& graph,
                                const GridConfig& config, long long runs,
                                std::uint64_t master_seed, int threads) {
  if (policies.empty()) throw ConfigError("estimate_payoffs: no policies");
  if (runs < 1) throw ConfigError("estimate_payoffs: runs must be >= 1");
  for (const auto& p : policies) {
    check_policy(p, graph, config);
    if (p.fingerprint != policies.front().fingerprint) {
      throw ConfigError("policy '" + p.style + "' fingerprint " + p.fingerprint +
                        " does not match '" + policies.front().style + "' (" +
                        policies.front().fingerprint + "); refusing to mix boards");
    }
  }
  const int n = static_cast<int>(policies.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (policies[i].style == policies[j].style) {
        throw ConfigError("duplicate policy style '" + policies[i].style + "'");
      }
    }
  }

  EstimateResult out;
  out.payoffs.strategies.reserve(n);
  for (const auto& p : policies) out.payoffs.strategies.push_back(p.style);
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  out.payoffs.p1.assign(cells, 0.0);
  out.payoffs.p2.assign(cells, 0.0);
  out.payoffs.runs.assign(cells, runs);
  out.violations.assign(cells, 0.0);

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t cell = next.fetch_add(1);
      if (cell >= cells) break;
      const int i = static_cast<int>(cell) / n;
      const int j = static_cast<int>(cell) % n;
      const MatchResult m =
          simulate_profile(graph, config, policies[i], policies[j], runs, master_seed);
      out.payoffs.p1[cell] = m.p1;
      out.payoffs.p2[cell] = m.p2;
      out.violations[cell] = m.violation;
    }
  };

  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(cells)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

double violation_stats(const BlockGraph& graph, const GridConfig& config, const Policy& first,
                       const Policy& second, long long runs, Rng& rng) {
  if (runs < 1) throw ConfigError("violation_stats: runs must be >= 1");
  double sum = 0.0;
  for (long long g = 0; g < runs; ++g) {
    Rng game_rng(rng.bits());
    sum += play_match(graph, config, first, second, game_rng).violation;
  }
  return sum / static_cast<double>(runs);
}

}  // namespace gcg
