#include "gcg/response_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gcg/errors.hpp"

namespace gcg {

std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  // Explicit DFS frames: (node, position in its adjacency list).
  struct Frame {
    int node;
    std::size_t child;
  };
  std::vector<Frame> frames;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      const int v = f.node;
      if (f.child == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (f.child < adj[v].size()) {
        const int w = adj[v][f.child++];
        if (index[w] == -1) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
          if (w == v) break;
        }
        ++next_comp;
      }
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return comp;
}

ResponseGraph build_response_graph(const RankResult& rank, double threshold) {
  if (!(threshold >= 0.0)) throw ConfigError("edge threshold must be non-negative");
  ResponseGraph g;
  g.threshold = threshold;
  g.alpha = rank.config.alpha;
  g.pop_size = rank.config.pop_size;
  g.profiles = rank.profiles;
  g.mass = rank.mass;

  const double rho_neutral = 1.0 / rank.config.pop_size;
  const int n = static_cast<int>(g.profiles.size());
  std::vector<std::vector<int>> adj(n);
  for (const Deviation& d : rank.transitions.deviations) {
    const double ratio = d.rho / rho_neutral;
    if (ratio > threshold) {
      g.edges.push_back({d.from, d.to, ratio});
      adj[d.from].push_back(d.to);
    }
  }

  g.component = strongly_connected_components(adj);
  const int n_comps =
      n > 0 ? *std::max_element(g.component.begin(), g.component.end()) + 1 : 0;
  std::vector<bool> sink(n_comps, true);
  for (const auto& e : g.edges) {
    if (g.component[e.from] != g.component[e.to]) sink[g.component[e.from]] = false;
  }
  g.in_mcc.assign(n, false);
  for (int v = 0; v < n; ++v) {
    if (sink[g.component[v]]) {
      g.in_mcc[v] = true;
      g.mcc_members.push_back(v);
    }
  }
  return g;
}

namespace {

std::string fill_color(double mass, double max_mass) {
  // Light blue-gray up to a saturated steel blue, linear in relative mass.
  const double t = max_mass > 0.0 ? mass / max_mass : 0.0;
  const auto mix = [t](int lo, int hi) {
    return static_cast<int>(lo + t * (hi - lo) + 0.5);
  };
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", mix(242, 31), mix(245, 78), mix(250, 140));
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2g", v);
  return buf;
}

std::string two_dec(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string to_dot(const ResponseGraph& g) {
  std::ostringstream out;
  out << "digraph response_graph {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=ellipse style=filled fontname=\"Helvetica\" fontsize=11];\n";
  out << "  edge [color=\"#555555\" fontname=\"Helvetica\" fontsize=9];\n";

  double max_mass = 0.0;
  for (double m : g.mass) max_mass = std::max(max_mass, m);
  double max_ratio = 0.0;
  for (const auto& e : g.edges) max_ratio = std::max(max_ratio, e.rho_ratio);

  for (std::size_t v = 0; v < g.profiles.size(); ++v) {
    const bool dark = max_mass > 0.0 && g.mass[v] / max_mass > 0.55;
    out << "  \"" << g.profiles[v] << "\" [label=\"" << g.profiles[v] << "\\n"
        << two_dec(g.mass[v]) << "\" fillcolor=\"" << fill_color(g.mass[v], max_mass) << "\"";
    if (dark) out << " fontcolor=\"white\"";
    if (g.in_mcc[v]) out << " color=\"#b8860b\" penwidth=2.5";
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    const double w =
        max_ratio > 0.0 ? 0.5 + 2.5 * std::min(1.0, e.rho_ratio / max_ratio) : 1.0;
    out << "  \"" << g.profiles[e.from] << "\" -> \"" << g.profiles[e.to] << "\" [label=\""
        << short_num(e.rho_ratio) << "\" penwidth=" << two_dec(w) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const ResponseGraph& g) {
  nlohmann::json j;
  j["alpha"] = g.alpha;
  j["pop_size"] = g.pop_size;
  j["edge_threshold"] = g.threshold;
  j["nodes"] = nlohmann::json::array();
  for (std::size_t v = 0; v < g.profiles.size(); ++v) {
    j["nodes"].push_back({{"profile", g.profiles[v]},
                          {"mass", g.mass[v]},
                          {"component", g.component[v]},
                          {"mcc", static_cast<bool>(g.in_mcc[v])}});
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) {
    j["edges"].push_back({{"from", g.profiles[e.from]},
                          {"to", g.profiles[e.to]},
                          {"rho_ratio", e.rho_ratio}});
  }
  j["mcc"] = nlohmann::json::array();
  for (int v : g.mcc_members) j["mcc"].push_back(g.profiles[v]);
  return j.dump(2) + "\n";
}

}  // namespace gcg
