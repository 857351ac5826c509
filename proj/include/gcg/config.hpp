#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcg/alpharank.hpp"
#include "gcg/grid.hpp"
#include "gcg/learner.hpp"
#include "gcg/styles.hpp"

namespace gcg {

// Everything one experiment needs, parsed from a key = value file.  Flags
// and environment variables may override individual fields afterwards; the
// struct itself has sensible defaults for all of them.
struct PipelineConfig {
  std::uint64_t seed = 0;
  std::string out_dir = "out";

  GridConfig grid;
  std::vector<std::string> styles;        // names to train/simulate, catalog order
  std::vector<StyleSpec> custom_styles;   // style.<NAME> definitions from the file
  Hyperparams train;

  long long runs = 5000;  // games per ordered profile
  int threads = 1;

  AlphaRankConfig rank;
  double alpha_start = 0.1;
  double alpha_end = 10.0;
  double alpha_step = 0.01;
  double edge_threshold = 1.0;

  // Custom styles shadow catalog entries of the same name.
  const StyleSpec& resolve_style(const std::string& name) const;
  std::vector<StyleSpec> resolved_styles() const;

  void validate() const;
};

// Parses config text.  Lines are `key = value`; blank lines and lines
// starting with '#' are skipped.  Unknown keys, bad values and duplicate
// keys raise ConfigError with <source>:<line>.
PipelineConfig parse_config(const std::string& text, const std::string& source_name);

PipelineConfig load_config(const std::string& path);

}  // namespace gcg
