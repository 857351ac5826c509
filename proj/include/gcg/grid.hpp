#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcg/rng.hpp"

namespace gcg {

// Board layout parameters.  `seed` drives block-partition generation and
// initial-state draws so a whole experiment is reproducible from one value.
struct GridConfig {
  int rows = 4;
  int cols = 5;
  int num_blocks = 10;
  int num_colors = 10;
  double hidden_fraction = 0.3;
  std::uint64_t seed = 0;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Partition of the rows x cols grid into 4-connected blocks, plus the block
// adjacency structure induced by cell adjacency.
struct BlockGraph {
  int rows = 0;
  int cols = 0;
  int num_blocks = 0;
  std::vector<int> cell_block;              // cell id (r*cols+c) -> block id
  std::vector<std::vector<int>> cells;      // block id -> sorted cell ids
  std::vector<std::vector<int>> neighbors;  // block id -> sorted adjacent block ids

  int degree(int block) const { return static_cast<int>(neighbors[block].size()); }
  int max_degree() const;
  bool adjacent(int a, int b) const;
};

// Randomly partitions the grid into `num_blocks` 4-connected blocks:
// distinct seed cells are drawn first, then unassigned cells accrete onto
// adjacent blocks, each step choosing uniformly among the distinct
// (cell, block) frontier pairs.  Every block ends up non-empty and
// connected; every cell is covered exactly once.
BlockGraph generate_grid(const GridConfig& config, Rng& rng);

// 16-hex-digit digest of every GridConfig field.  Stamped into checkpoints
// and payoff files so artifacts produced under different board settings are
// never silently mixed.
std::string grid_fingerprint(const GridConfig& config);

}  // namespace gcg
