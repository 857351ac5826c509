#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gcg/config.hpp"

namespace gcg {

// Pipeline entry points used by the CLI.  Each writes its artifacts under
// cfg.out_dir (atomically) and narrates progress to `log`.  Errors surface
// as exceptions; the CLI turns them into messages and exit codes.

// Trains one policy per configured style on the shared board; writes
// policy_<style>.ckpt and train_<style>.csv.
void cmd_train(const PipelineConfig& cfg, std::ostream& log);

// Loads the trained policies, simulates every ordered profile and writes
// payoffs.csv + violations.csv.  Refuses checkpoints whose board
// fingerprint does not match the config.
void cmd_simulate(const PipelineConfig& cfg, std::ostream& log);

// Ranks an existing payoff table: rankings.csv, response_graph.dot,
// response_graph.json and alpha_sweep.csv.
void cmd_rank(const std::string& payoff_path, const PipelineConfig& cfg, std::ostream& log);

// Merges payoff tables from repeated runs into one.
void cmd_aggregate(const std::vector<std::string>& inputs, const std::string& out_path,
                   std::ostream& log);

// Prints all pure Nash profiles of a payoff table.
void cmd_nash(const std::string& payoff_path, std::ostream& log);

}  // namespace gcg
