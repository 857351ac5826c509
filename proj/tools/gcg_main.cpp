// Command-line front end for the style-policy pipeline: train policies,
// simulate the meta-game, rank it, merge repeated runs, scan for pure Nash
// profiles.  Every flag can also come from the environment as GCG_<FLAG>.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcg/commands.hpp"
#include "gcg/errors.hpp"
#include "gcg/io.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  long long runs = 0;
  int threads = 0;
  double alpha = 0.0;
  int pop_size = 0;
  int populations = 0;
  double edge_threshold = -1.0;
  std::string alpha_grid;  // START:END:STEP
};

// count() throws for options a subcommand never registered; probe first.
bool given(const CLI::App& cmd, const std::string& name) {
  const CLI::Option* opt = cmd.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

gcg::PipelineConfig make_config(const CLI::App& cmd, const Overrides& ov) {
  gcg::PipelineConfig cfg;
  if (!ov.config_path.empty()) cfg = gcg::load_config(ov.config_path);
  if (given(cmd, "--out")) cfg.out_dir = ov.out_dir;
  if (given(cmd, "--seed")) {
    cfg.seed = ov.seed;
    cfg.grid.seed = ov.seed;
  }
  if (given(cmd, "--runs")) cfg.runs = ov.runs;
  if (given(cmd, "--threads")) cfg.threads = ov.threads;
  if (given(cmd, "--alpha")) cfg.rank.alpha = ov.alpha;
  if (given(cmd, "--pop-size")) cfg.rank.pop_size = ov.pop_size;
  if (given(cmd, "--populations")) cfg.rank.populations = ov.populations;
  if (given(cmd, "--edge-threshold")) cfg.edge_threshold = ov.edge_threshold;
  if (given(cmd, "--alpha-grid")) {
    const auto& s = ov.alpha_grid;
    const auto c1 = s.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw gcg::ConfigError("--alpha-grid expects START:END:STEP, got '" + s + "'");
    }
    cfg.alpha_start = gcg::parse_double(s.substr(0, c1), "--alpha-grid start");
    cfg.alpha_end = gcg::parse_double(s.substr(c1 + 1, c2 - c1 - 1), "--alpha-grid end");
    cfg.alpha_step = gcg::parse_double(s.substr(c2 + 1), "--alpha-grid step");
  }
  return cfg;
}

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--out", ov.out_dir, "Output directory")->envname("GCG_OUT");
  cmd->add_option("--seed", ov.seed, "Master seed")->envname("GCG_SEED");
}

void add_rank_options(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--alpha", ov.alpha, "Selection intensity")->envname("GCG_ALPHA");
  cmd->add_option("--pop-size", ov.pop_size, "Finite population size m")
      ->envname("GCG_POP_SIZE");
  cmd->add_option("--populations", ov.populations, "1 or 2 populations")
      ->envname("GCG_POPULATIONS");
  cmd->add_option("--alpha-grid", ov.alpha_grid, "Sweep grid START:END:STEP")
      ->envname("GCG_ALPHA_GRID");
  cmd->add_option("--edge-threshold", ov.edge_threshold,
                  "Response-graph edge cutoff on rho/rho_neutral")
      ->envname("GCG_EDGE_THRESHOLD");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-coloring game: style policies, empirical payoffs, evolutionary ranking"};
  app.require_subcommand(1);

  Overrides ov;
  std::vector<std::string> agg_inputs;
  std::string agg_out, payoff_path;

  CLI::App* train = app.add_subcommand("train", "Train one policy per style");
  train->add_option("--config", ov.config_path, "Config file")
      ->envname("GCG_CONFIG")
      ->required();
  add_common(train, ov);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Estimate the empirical payoff table from checkpoints");
  simulate->add_option("--config", ov.config_path, "Config file")
      ->envname("GCG_CONFIG")
      ->required();
  add_common(simulate, ov);
  simulate->add_option("--runs", ov.runs, "Games per ordered profile")->envname("GCG_RUNS");
  simulate->add_option("--threads", ov.threads, "Worker threads")->envname("GCG_THREADS");

  CLI::App* rank = app.add_subcommand("rank", "Rank a payoff table and emit graphs/sweeps");
  rank->add_option("payoffs", payoff_path, "Payoff CSV")->required();
  rank->add_option("--config", ov.config_path, "Config file")->envname("GCG_CONFIG");
  add_common(rank, ov);
  add_rank_options(rank, ov);

  CLI::App* agg = app.add_subcommand("aggregate", "Merge payoff tables from repeated runs");
  agg->add_option("inputs", agg_inputs, "Payoff CSVs")->required();
  agg->add_option("--out-file", agg_out, "Merged CSV path")->required();

  CLI::App* nash = app.add_subcommand("nash", "List pure Nash profiles of a payoff table");
  nash->add_option("payoffs", payoff_path, "Payoff CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      gcg::cmd_train(make_config(*train, ov), std::cout);
    } else if (simulate->parsed()) {
      gcg::cmd_simulate(make_config(*simulate, ov), std::cout);
    } else if (rank->parsed()) {
      gcg::cmd_rank(payoff_path, make_config(*rank, ov), std::cout);
    } else if (agg->parsed()) {
      gcg::cmd_aggregate(agg_inputs, agg_out, std::cout);
    } else if (nash->parsed()) {
      gcg::cmd_nash(payoff_path, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
