#include "gcg/commands.hpp"

#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gcg/egta.hpp"
#include "gcg/errors.hpp"
#include "gcg/io.hpp"
#include "gcg/response_graph.hpp"

namespace gcg {

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

std::string policy_path(const PipelineConfig& cfg, const std::string& style) {
  return join(cfg.out_dir, "policy_" + style + ".ckpt");
}

std::vector<std::string> provenance(const PipelineConfig& cfg) {
  return {
      "fingerprint: " + grid_fingerprint(cfg.grid),
      "seed: " + std::to_string(cfg.seed),
      "runs_per_profile: " + std::to_string(cfg.runs),
  };
}

}  // namespace

void cmd_train(const PipelineConfig& cfg, std::ostream& log) {
  cfg.validate();
  Rng grid_rng = Rng::split(cfg.grid.seed, "grid");
  const BlockGraph graph = generate_grid(cfg.grid, grid_rng);
  log << "board " << cfg.grid.rows << "x" << cfg.grid.cols << ", " << graph.num_blocks
      << " blocks, fingerprint " << grid_fingerprint(cfg.grid) << "\n";

  for (const auto& name : cfg.styles) {
    const StyleSpec& style = cfg.resolve_style(name);
    Rng rng = Rng::split(cfg.seed, "train/" + name);
    log << "training " << name << " (" << cfg.train.episodes << " episodes)..." << std::flush;

    int reported = 0;
    TrainResult result =
        train_policy(style, graph, cfg.grid, cfg.train, rng, [&](const TrainLogRow& row) {
          if (cfg.train.episodes >= 10 && (row.episode + 1) % (cfg.train.episodes / 10) == 0 &&
              reported < 10) {
            log << " " << (row.episode + 1) << std::flush;
            ++reported;
          }
        });

    save_policy(policy_path(cfg, name), result.policy);
    write_atomic(join(cfg.out_dir, "train_" + name + ".csv"), training_log_csv(result.log));

    const auto& last = result.log.back();
    log << " done (final return " << format_double(last.ret) << ", loss "
        << format_double(last.loss) << ")\n";
  }
  log << "wrote " << cfg.styles.size() << " checkpoints to " << cfg.out_dir << "\n";
}

void cmd_simulate(const PipelineConfig& cfg, std::ostream& log) {
  cfg.validate();
  Rng grid_rng = Rng::split(cfg.grid.seed, "grid");
  const BlockGraph graph = generate_grid(cfg.grid, grid_rng);
  const std::string expect = grid_fingerprint(cfg.grid);

  std::vector<Policy> policies;
  policies.reserve(cfg.styles.size());
  for (const auto& name : cfg.styles) {
    Policy p = load_policy(policy_path(cfg, name));
    if (p.fingerprint != expect) {
      throw ConfigError("checkpoint for '" + name + "' has board fingerprint " +
                        p.fingerprint + " but the config asks for " + expect +
                        "; retrain or fix the config");
    }
    policies.push_back(std::move(p));
  }

  log << "simulating " << policies.size() * policies.size() << " profiles x " << cfg.runs
      << " games on " << cfg.threads << " thread(s)...\n";
  const EstimateResult est =
      estimate_payoffs(policies, graph, cfg.grid, cfg.runs, cfg.seed, cfg.threads);

  save_payoff_csv(join(cfg.out_dir, "payoffs.csv"), est.payoffs, provenance(cfg));

  std::ostringstream vio;
  for (const auto& c : provenance(cfg)) vio << "# " << c << "\n";
  vio << "row_strategy,column_strategy,violation_rate,n_runs\n";
  const int n = est.payoffs.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      vio << est.payoffs.strategies[i] << "," << est.payoffs.strategies[j] << ","
          << format_double(est.violations[est.payoffs.idx(i, j)]) << "," << cfg.runs << "\n";
    }
  }
  write_atomic(join(cfg.out_dir, "violations.csv"), vio.str());
  log << "wrote payoffs.csv and violations.csv to " << cfg.out_dir << "\n";
}

void cmd_rank(const std::string& payoff_path, const PipelineConfig& cfg, std::ostream& log) {
  const PayoffTensor tensor = load_payoff_csv(payoff_path);
  log << "ranking " << tensor.n() << " strategies (alpha " << format_double(cfg.rank.alpha)
      << ", m " << cfg.rank.pop_size << ", " << cfg.rank.populations << " population(s))\n";

  const RankResult rank = rank_profiles(tensor, cfg.rank);
  log << "stationary solve: residual " << format_double(rank.solve.residual)
      << (rank.solve.used_fallback
              ? " (damped power iteration, " + std::to_string(rank.solve.iterations) + " steps)"
              : " (direct solve)")
      << "\n";

  {
    std::ostringstream out;
    out << "# alpha: " << format_double(cfg.rank.alpha) << "\n";
    out << "# pop_size: " << cfg.rank.pop_size << "\n";
    out << "# residual: " << format_double(rank.solve.residual) << "\n";
    out << "rank,profile,mass\n";
    for (std::size_t r = 0; r < rank.order.size(); ++r) {
      const int p = rank.order[r];
      out << (r + 1) << "," << rank.profiles[p] << "," << format_double(rank.mass[p]) << "\n";
    }
    write_atomic(join(cfg.out_dir, "rankings.csv"), out.str());
  }

  const ResponseGraph graph = build_response_graph(rank, cfg.edge_threshold);
  write_atomic(join(cfg.out_dir, "response_graph.dot"), to_dot(graph));
  write_atomic(join(cfg.out_dir, "response_graph.json"), to_json(graph));

  const auto grid = alpha_grid(cfg.alpha_start, cfg.alpha_end, cfg.alpha_step);
  const SweepResult sweep = alpha_sweep(tensor, cfg.rank, grid);
  {
    std::ostringstream out;
    out << "alpha,profile,mass\n";
    for (std::size_t k = 0; k < sweep.alphas.size(); ++k) {
      if (!sweep.errors[k].empty()) {
        log << "alpha " << format_double(sweep.alphas[k]) << " failed: " << sweep.errors[k]
            << "\n";
        continue;
      }
      for (std::size_t p = 0; p < sweep.profiles.size(); ++p) {
        out << format_double(sweep.alphas[k]) << "," << sweep.profiles[p] << ","
            << format_double(sweep.mass[k][p]) << "\n";
      }
    }
    write_atomic(join(cfg.out_dir, "alpha_sweep.csv"), out.str());
  }

  log << "top profiles:\n";
  const std::size_t top = std::min<std::size_t>(10, rank.order.size());
  for (std::size_t r = 0; r < top; ++r) {
    const int p = rank.order[r];
    std::ostringstream mass;
    mass << std::fixed << std::setprecision(4) << rank.mass[p];
    log << "  " << (r + 1) << ". " << rank.profiles[p] << "  " << mass.str() << "\n";
  }
  log << "wrote rankings.csv, response_graph.dot/.json and alpha_sweep.csv to " << cfg.out_dir
      << "\n";
}

void cmd_aggregate(const std::vector<std::string>& inputs, const std::string& out_path,
                   std::ostream& log) {
  if (inputs.empty()) throw ConfigError("aggregate: no input files given");
  std::vector<PayoffTensor> parts;
  parts.reserve(inputs.size());
  for (const auto& path : inputs) parts.push_back(load_payoff_csv(path));
  const PayoffTensor merged = aggregate(parts);
  save_payoff_csv(out_path, merged,
                  {"aggregated_from: " + std::to_string(inputs.size()) + " runs"});
  log << "aggregated " << inputs.size() << " tables into " << out_path << "\n";
}

void cmd_nash(const std::string& payoff_path, std::ostream& log) {
  const PayoffTensor tensor = load_payoff_csv(payoff_path);
  const auto equilibria = pure_nash(tensor);
  if (equilibria.empty()) {
    log << "no pure Nash profile\n";
    return;
  }
  for (const auto& [i, j] : equilibria) {
    log << "(" << tensor.strategies[i] << "," << tensor.strategies[j] << ")  p1 "
        << format_double(tensor.p1_at(i, j)) << "  p2 " << format_double(tensor.p2_at(i, j))
        << "\n";
  }
}

}  // namespace gcg
