#pragma once

#include <string>
#include <vector>

#include "gcg/alpharank.hpp"

namespace gcg {

// Directed graph over profiles: an edge i -> j exists when the fixation
// probability of the deviation i -> j exceeds the neutral rate 1/m by more
// than `threshold` (as a ratio).  Node annotations carry stationary mass
// and strongly-connected-component structure; the union of sink components
// is the chain's long-run support.
struct ResponseGraph {
  double threshold = 1.0;
  double alpha = 0.0;
  int pop_size = 0;

  std::vector<std::string> profiles;
  std::vector<double> mass;

  struct Edge {
    int from = 0;
    int to = 0;
    double rho_ratio = 0.0;  // rho / (1/m)
  };
  std::vector<Edge> edges;

  std::vector<int> component;    // SCC id per profile (0-based, reverse topological)
  std::vector<bool> in_mcc;      // profile belongs to a sink component
  std::vector<int> mcc_members;  // sorted profile indices of the sink union
};

ResponseGraph build_response_graph(const RankResult& rank, double threshold = 1.0);

// Strongly connected components of a directed graph given as adjacency
// lists; returns a component id per node.  Iterative, so deep graphs cannot
// overflow the stack.
std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adj);

// Graphviz rendering: node fill encodes stationary mass, heavy gold borders
// mark the sink components, edge labels carry rho / rho_neutral.
std::string to_dot(const ResponseGraph& g);

// Machine-readable dump of the same structure.
std::string to_json(const ResponseGraph& g);

}  // namespace gcg
