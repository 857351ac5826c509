#include "gcg/learner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcg/errors.hpp"
#include "gcg/io.hpp"

namespace gcg {

void Hyperparams::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("train.gamma must lie in [0, 1)");
  if (!(lr > 0.0)) throw ConfigError("train.lr must be positive");
  if (weight_decay < 0.0) throw ConfigError("train.weight_decay must be non-negative");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("train.tau must lie in (0, 1]");
  if (batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (episodes < 1) throw ConfigError("train.episodes must be >= 1");
  if (max_episode_steps < 1) throw ConfigError("train.max_episode_steps must be >= 1");
  if (replay_capacity < 1) throw ConfigError("train.replay_capacity must be >= 1");
  if (!(huber_beta > 0.0)) throw ConfigError("train.huber_beta must be positive");
  if (hidden.empty()) throw ConfigError("train.hidden must list at least one layer width");
  for (int h : hidden) {
    if (h < 1) throw ConfigError("train.hidden widths must be positive");
  }
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0) ||
      !(epsilon_end >= 0.0 && epsilon_end <= 1.0)) {
    throw ConfigError("train.epsilon bounds must lie in [0, 1]");
  }
  if (!(epsilon_end > 0.0) && epsilon_start > 0.0) {
    throw ConfigError("train.epsilon_end must be positive for an exponential schedule");
  }
  if (!(epsilon_decay_fraction >= 0.0 && epsilon_decay_fraction <= 1.0)) {
    throw ConfigError("train.epsilon_decay_fraction must lie in [0, 1]");
  }
}

double epsilon_at(int episode, const Hyperparams& hp) {
  const double span = hp.epsilon_decay_fraction * hp.episodes;
  if (span <= 0.0 || episode >= span) return hp.epsilon_end;
  if (hp.epsilon_start <= 0.0) return hp.epsilon_end;
  const double t = episode / span;
  return hp.epsilon_start * std::pow(hp.epsilon_end / hp.epsilon_start, t);
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay capacity must be >= 1");
}

void ReplayBuffer::push(Experience e) {
  if (store_.size() < capacity_) {
    store_.push_back(std::move(e));
  } else {
    store_[next_] = std::move(e);
    next_ = (next_ + 1) % capacity_;
  }
}

const Experience& ReplayBuffer::sample(Rng& rng) const {
  return store_[rng.below(store_.size())];
}

int Policy::greedy_index(const std::vector<double>& encoded) const {
  static thread_local QNetwork::Workspace ws;
  const auto& q = net.forward(encoded, ws);
  int best = 0;
  for (int a = 1; a < static_cast<int>(q.size()); ++a) {
    if (q[a] > q[best]) best = a;  // strict: ties keep the lowest index
  }
  return best;
}

Action Policy::greedy(const GameState& state) const {
  return action_from_index(greedy_index(encode_state(state)), num_colors);
}

double train_step(QNetwork& policy, const QNetwork& target, const ReplayBuffer& replay,
                  AdamW& opt, const Hyperparams& hp, Rng& rng) {
  static thread_local QNetwork::Workspace ws, ws_t;
  static thread_local std::vector<double> grad;
  grad.assign(policy.params().size(), 0.0);

  double loss_sum = 0.0;
  for (int k = 0; k < hp.batch_size; ++k) {
    const Experience& e = replay.sample(rng);
    double y = e.r;
    if (!e.terminal) {
      const auto& q2 = target.forward(e.s2, ws_t);
      y += hp.gamma * *std::max_element(q2.begin(), q2.end());
    }
    const double q = policy.forward(e.s, ws)[e.a];
    const double residual = q - y;
    loss_sum += huber(residual, hp.huber_beta);
    policy.backward(ws, e.a, huber_grad(residual, hp.huber_beta) / hp.batch_size, grad);
  }
  opt.step(policy.params(), grad);
  return loss_sum / hp.batch_size;
}

TrainResult train_policy(const StyleSpec& style, const BlockGraph& graph,
                         const GridConfig& config, const Hyperparams& hp, Rng& rng,
                         const std::function<void(const TrainLogRow&)>& progress) {
  hp.validate();
  config.validate();

  const int input_dim = graph.num_blocks * (config.num_colors + 2);
  const int n_actions = graph.num_blocks * config.num_colors;

  QNetwork policy_net(input_dim, hp.hidden, n_actions);
  policy_net.init(rng);
  QNetwork target_net = policy_net;
  AdamW opt(policy_net.params().size(), hp.lr, hp.weight_decay);
  ReplayBuffer replay(hp.replay_capacity);
  QNetwork::Workspace ws;

  TrainResult result;
  result.log.reserve(hp.episodes);

  for (int ep = 0; ep < hp.episodes; ++ep) {
    const double eps = epsilon_at(ep, hp);
    GameState state = init_state(graph, config, rng);
    double loss_sum = 0.0, ep_return = 0.0;
    int n_updates = 0;

    for (int t = 0; t < hp.max_episode_steps && !is_terminal(state); ++t) {
      std::vector<double> s = encode_state(state);
      int a;
      if (rng.uniform() < eps) {
        a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_actions)));
      } else {
        const auto& q = policy_net.forward(s, ws);
        a = 0;
        for (int i = 1; i < n_actions; ++i) {
          if (q[i] > q[a]) a = i;
        }
      }
      const Action act = action_from_index(a, config.num_colors);
      // Shaping is judged on the state the agent saw, before reveals land.
      const double pref = preference_reward(style, state, act, graph);
      SingleOutcome out = step_single(graph, state, act, rng);
      const double r = out.base_reward + pref;

      replay.push({std::move(s), a, r, encode_state(out.next), out.terminal});
      if (replay.size() > static_cast<std::size_t>(hp.batch_size)) {
        loss_sum += train_step(policy_net, target_net, replay, opt, hp, rng);
        ++n_updates;
      }
      soft_update(target_net, policy_net, hp.tau);

      ep_return += r;
      state = std::move(out.next);
    }

    TrainLogRow row;
    row.episode = ep;
    row.loss = n_updates > 0 ? loss_sum / n_updates : 0.0;
    row.ret = ep_return;
    row.epsilon = eps;
    if (!std::isfinite(row.loss) || !std::isfinite(row.ret)) {
      throw TrainingError("training diverged for style '" + style.name + "' at episode " +
                          std::to_string(ep) + " (loss=" + format_double(row.loss) +
                          ", return=" + format_double(row.ret) + ")");
    }
    result.log.push_back(row);
    if (progress) progress(row);
  }

  result.policy.style = style.name;
  result.policy.fingerprint = grid_fingerprint(config);
  result.policy.num_blocks = graph.num_blocks;
  result.policy.num_colors = config.num_colors;
  result.policy.net = std::move(policy_net);
  return result;
}

void save_policy(const std::string& path, const Policy& policy) {
  std::ostringstream out;
  out << "gcg-policy 1\n";
  out << "style " << policy.style << "\n";
  out << "fingerprint " << policy.fingerprint << "\n";
  out << "blocks " << policy.num_blocks << "\n";
  out << "colors " << policy.num_colors << "\n";
  out << "layers";
  for (int d : policy.net.dims()) out << " " << d;
  out << "\n";
  out << "params " << policy.net.params().size() << "\n";
  for (double v : policy.net.params()) out << format_double(v) << "\n";
  write_atomic(path, out.str());
}

Policy load_policy(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  const auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) {
      throw IoError(path + ": truncated at line " + std::to_string(line_no + 1));
    }
    ++line_no;
    return line;
  };
  const auto fail = [&](const std::string& what) -> void {
    throw IoError(path + ":" + std::to_string(line_no) + ": " + what);
  };

  if (next_line() != "gcg-policy 1") fail("not a gcg-policy version 1 file");

  Policy p;
  std::vector<int> dims;
  std::size_t n_params = 0;
  {
    std::istringstream ls(next_line());
    std::string key;
    ls >> key >> p.style;
    if (key != "style" || p.style.empty()) fail("expected 'style <name>'");
  }
  {
    std::istringstream ls(next_line());
    std::string key;
    ls >> key >> p.fingerprint;
    if (key != "fingerprint" || p.fingerprint.size() != 16) {
      fail("expected 'fingerprint <16 hex digits>'");
    }
  }
  {
    std::istringstream ls(next_line());
    std::string key;
    ls >> key >> p.num_blocks;
    if (key != "blocks" || !ls || p.num_blocks < 1) fail("expected 'blocks <count>'");
  }
  {
    std::istringstream ls(next_line());
    std::string key;
    ls >> key >> p.num_colors;
    if (key != "colors" || !ls || p.num_colors < 1) fail("expected 'colors <count>'");
  }
  {
    std::istringstream ls(next_line());
    std::string key;
    ls >> key;
    if (key != "layers") fail("expected 'layers <widths...>'");
    int d;
    while (ls >> d) dims.push_back(d);
    if (dims.size() < 3) fail("layers must list input, hidden and output widths");
  }
  {
    std::istringstream ls(next_line());
    std::string key;
    ls >> key >> n_params;
    if (key != "params" || !ls) fail("expected 'params <count>'");
  }

  if (dims.front() != p.num_blocks * (p.num_colors + 2)) {
    fail("input width does not match blocks * (colors + 2)");
  }
  if (dims.back() != p.num_blocks * p.num_colors) {
    fail("output width does not match blocks * colors");
  }

  p.net = QNetwork(dims.front(), std::vector<int>(dims.begin() + 1, dims.end() - 1),
                   dims.back());
  if (p.net.params().size() != n_params) {
    fail("params count " + std::to_string(n_params) + " does not match layer shapes (" +
         std::to_string(p.net.params().size()) + " expected)");
  }
  for (std::size_t i = 0; i < n_params; ++i) {
    const std::string& token = next_line();
    const double v = parse_double(token, path + ":" + std::to_string(line_no));
    if (!std::isfinite(v)) fail("non-finite parameter value");
    p.net.params()[i] = v;
  }
  return p;
}

std::string training_log_csv(const std::vector<TrainLogRow>& log) {
  std::ostringstream out;
  out << "episode,loss,return,epsilon\n";
  for (const auto& row : log) {
    out << row.episode << "," << format_double(row.loss) << "," << format_double(row.ret)
        << "," << format_double(row.epsilon) << "\n";
  }
  return out.str();
}

}  // namespace gcg
