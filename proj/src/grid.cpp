#include "gcg/grid.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "gcg/errors.hpp"
#include "gcg/io.hpp"

namespace gcg {

void GridConfig::validate() const {
  if (rows < 1) throw ConfigError("grid.rows must be >= 1, got " + std::to_string(rows));
  if (cols < 1) throw ConfigError("grid.cols must be >= 1, got " + std::to_string(cols));
  if (num_blocks < 1) {
    throw ConfigError("grid.blocks must be >= 1, got " + std::to_string(num_blocks));
  }
  if (num_blocks > rows * cols) {
    throw ConfigError("grid.blocks (" + std::to_string(num_blocks) + ") exceeds cell count (" +
                      std::to_string(rows * cols) + ")");
  }
  if (num_colors < 1) {
    throw ConfigError("grid.colors must be >= 1, got " + std::to_string(num_colors));
  }
  if (!(hidden_fraction >= 0.0 && hidden_fraction <= 1.0)) {
    throw ConfigError("grid.hidden_fraction must lie in [0, 1]");
  }
}

int BlockGraph::max_degree() const {
  int best = 0;
  for (int b = 0; b < num_blocks; ++b) best = std::max(best, degree(b));
  return best;
}

bool BlockGraph::adjacent(int a, int b) const {
  return std::binary_search(neighbors[a].begin(), neighbors[a].end(), b);
}

BlockGraph generate_grid(const GridConfig& config, Rng& rng) {
  config.validate();
  const int rows = config.rows, cols = config.cols;
  const int n_cells = rows * cols;
  const int n_blocks = config.num_blocks;

  // Distinct seed cells via partial Fisher-Yates.
  std::vector<int> order(n_cells);
  for (int i = 0; i < n_cells; ++i) order[i] = i;
  for (int i = 0; i < n_blocks; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_cells - i)));
    std::swap(order[i], order[j]);
  }

  std::vector<int> assign(n_cells, -1);
  for (int b = 0; b < n_blocks; ++b) assign[order[b]] = b;

  const auto for_each_neighbor = [&](int cell, auto&& fn) {
    const int r = cell / cols, c = cell % cols;
    if (r > 0) fn(cell - cols);
    if (r + 1 < rows) fn(cell + cols);
    if (c > 0) fn(cell - 1);
    if (c + 1 < cols) fn(cell + 1);
  };

  // Frontier accretion.  Recomputing the frontier each step keeps the choice
  // uniform over distinct (cell, block) pairs; boards are tiny so the cost
  // is irrelevant.
  int unassigned = n_cells - n_blocks;
  std::vector<std::pair<int, int>> frontier;
  while (unassigned > 0) {
    frontier.clear();
    for (int cell = 0; cell < n_cells; ++cell) {
      if (assign[cell] != -1) continue;
      for_each_neighbor(cell, [&](int nb) {
        if (assign[nb] != -1) frontier.emplace_back(cell, assign[nb]);
      });
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    const auto& pick = frontier[rng.below(frontier.size())];
    assign[pick.first] = pick.second;
    --unassigned;
  }

  BlockGraph g;
  g.rows = rows;
  g.cols = cols;
  g.num_blocks = n_blocks;
  g.cell_block = assign;
  g.cells.assign(n_blocks, {});
  for (int cell = 0; cell < n_cells; ++cell) g.cells[assign[cell]].push_back(cell);

  g.neighbors.assign(n_blocks, {});
  for (int cell = 0; cell < n_cells; ++cell) {
    const int r = cell / cols, c = cell % cols;
    // Right and down edges cover every adjacent cell pair once.
    if (c + 1 < cols && assign[cell] != assign[cell + 1]) {
      g.neighbors[assign[cell]].push_back(assign[cell + 1]);
      g.neighbors[assign[cell + 1]].push_back(assign[cell]);
    }
    if (r + 1 < rows && assign[cell] != assign[cell + cols]) {
      g.neighbors[assign[cell]].push_back(assign[cell + cols]);
      g.neighbors[assign[cell + cols]].push_back(assign[cell]);
    }
  }
  for (auto& nbs : g.neighbors) {
    std::sort(nbs.begin(), nbs.end());
    nbs.erase(std::unique(nbs.begin(), nbs.end()), nbs.end());
  }
  return g;
}

std::string grid_fingerprint(const GridConfig& config) {
  const std::string canon = "rows=" + std::to_string(config.rows) +
                            ";cols=" + std::to_string(config.cols) +
                            ";blocks=" + std::to_string(config.num_blocks) +
                            ";colors=" + std::to_string(config.num_colors) +
                            ";hidden_fraction=" + format_double(config.hidden_fraction) +
                            ";seed=" + std::to_string(config.seed);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return std::string(buf);
}

}  // namespace gcg
