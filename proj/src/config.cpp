#include "gcg/config.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "gcg/errors.hpp"
#include "gcg/io.hpp"

namespace gcg {

const StyleSpec& PipelineConfig::resolve_style(const std::string& name) const {
  for (const auto& s : custom_styles) {
    if (s.name == name) return s;
  }
  return find_style(name);
}

std::vector<StyleSpec> PipelineConfig::resolved_styles() const {
  std::vector<StyleSpec> out;
  out.reserve(styles.size());
  for (const auto& name : styles) out.push_back(resolve_style(name));
  return out;
}

void PipelineConfig::validate() const {
  grid.validate();
  train.validate();
  rank.validate();
  if (styles.empty()) throw ConfigError("styles list is empty");
  {
    std::set<std::string> seen;
    for (const auto& name : styles) {
      if (!seen.insert(name).second) throw ConfigError("style '" + name + "' listed twice");
      resolve_style(name);  // throws for unknown names
    }
  }
  if (runs < 1) throw ConfigError("egta.runs must be >= 1");
  if (threads < 1) throw ConfigError("egta.threads must be >= 1");
  if (!(alpha_start > 0.0)) throw ConfigError("rank.alpha_start must be positive");
  if (!(alpha_step > 0.0)) throw ConfigError("rank.alpha_step must be positive");
  if (alpha_end < alpha_start) throw ConfigError("rank.alpha_end must be >= rank.alpha_start");
  if (!(edge_threshold >= 0.0)) throw ConfigError("rank.edge_threshold must be non-negative");
  if (out_dir.empty()) throw ConfigError("out directory must not be empty");
}

namespace {

std::uint64_t parse_u64(const std::string& token, const std::string& where) {
  const std::string t = trim(token);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(where + ": expected an unsigned integer, got '" + token + "'");
  }
  return value;
}

long long parse_ll(const std::string& token, const std::string& where) {
  try {
    return parse_int(token, where);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

int parse_i(const std::string& token, const std::string& where) {
  const long long v = parse_ll(token, where);
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(where + ": value out of range");
  return static_cast<int>(v);
}

double parse_d(const std::string& token, const std::string& where) {
  try {
    return parse_double(token, where);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  for (const auto& f : split_csv_line(value)) {
    if (!f.empty()) items.push_back(f);
  }
  return items;
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const std::string& source_name) {
  PipelineConfig cfg;
  bool grid_seed_set = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::set<std::string> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = source_name + ":" + std::to_string(line_no);

    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");

    if (key == "seed") {
      cfg.seed = parse_u64(value, where);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "styles") {
      cfg.styles = split_list(value);
    } else if (key.rfind("style.", 0) == 0) {
      const std::string name = key.substr(6);
      if (name.empty()) throw ConfigError(where + ": style name missing in '" + key + "'");
      const auto parts = split_csv_line(value);
      if (parts.size() != 3) {
        throw ConfigError(where + ": style '" + name +
                          "' needs 'tone,difficulty,approach', got '" + value + "'");
      }
      StyleSpec s;
      s.name = name;
      s.tone = parse_d(parts[0], where);
      s.difficulty = parse_d(parts[1], where);
      s.approach = parse_d(parts[2], where);
      cfg.custom_styles.push_back(s);
    } else if (key == "grid.rows") {
      cfg.grid.rows = parse_i(value, where);
    } else if (key == "grid.cols") {
      cfg.grid.cols = parse_i(value, where);
    } else if (key == "grid.blocks") {
      cfg.grid.num_blocks = parse_i(value, where);
    } else if (key == "grid.colors") {
      cfg.grid.num_colors = parse_i(value, where);
    } else if (key == "grid.hidden_fraction") {
      cfg.grid.hidden_fraction = parse_d(value, where);
    } else if (key == "grid.seed") {
      cfg.grid.seed = parse_u64(value, where);
      grid_seed_set = true;
    } else if (key == "train.gamma") {
      cfg.train.gamma = parse_d(value, where);
    } else if (key == "train.lr") {
      cfg.train.lr = parse_d(value, where);
    } else if (key == "train.weight_decay") {
      cfg.train.weight_decay = parse_d(value, where);
    } else if (key == "train.tau") {
      cfg.train.tau = parse_d(value, where);
    } else if (key == "train.batch_size") {
      cfg.train.batch_size = parse_i(value, where);
    } else if (key == "train.episodes") {
      cfg.train.episodes = parse_i(value, where);
    } else if (key == "train.max_episode_steps") {
      cfg.train.max_episode_steps = parse_i(value, where);
    } else if (key == "train.replay_capacity") {
      cfg.train.replay_capacity = static_cast<std::size_t>(parse_u64(value, where));
    } else if (key == "train.huber_beta") {
      cfg.train.huber_beta = parse_d(value, where);
    } else if (key == "train.hidden") {
      cfg.train.hidden.clear();
      for (const auto& w : split_list(value)) cfg.train.hidden.push_back(parse_i(w, where));
    } else if (key == "train.epsilon_start") {
      cfg.train.epsilon_start = parse_d(value, where);
    } else if (key == "train.epsilon_end") {
      cfg.train.epsilon_end = parse_d(value, where);
    } else if (key == "train.epsilon_decay_fraction") {
      cfg.train.epsilon_decay_fraction = parse_d(value, where);
    } else if (key == "egta.runs") {
      cfg.runs = parse_ll(value, where);
    } else if (key == "egta.threads") {
      cfg.threads = parse_i(value, where);
    } else if (key == "rank.alpha") {
      cfg.rank.alpha = parse_d(value, where);
    } else if (key == "rank.pop_size") {
      cfg.rank.pop_size = parse_i(value, where);
    } else if (key == "rank.populations") {
      cfg.rank.populations = parse_i(value, where);
    } else if (key == "rank.alpha_start") {
      cfg.alpha_start = parse_d(value, where);
    } else if (key == "rank.alpha_end") {
      cfg.alpha_end = parse_d(value, where);
    } else if (key == "rank.alpha_step") {
      cfg.alpha_step = parse_d(value, where);
    } else if (key == "rank.edge_threshold") {
      cfg.edge_threshold = parse_d(value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }

  if (cfg.styles.empty()) {
    for (const auto& s : style_catalog()) cfg.styles.push_back(s.name);
  }
  // One master seed drives everything unless the board is pinned separately.
  if (!grid_seed_set) cfg.grid.seed = cfg.seed;

  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  return parse_config(read_file(path), path);
}

}  // namespace gcg
