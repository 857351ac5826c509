#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gcg/game.hpp"
#include "gcg/grid.hpp"
#include "gcg/net.hpp"
#include "gcg/rng.hpp"
#include "gcg/styles.hpp"

namespace gcg {

struct Hyperparams {
  double gamma = 0.7;
  double lr = 5e-4;
  double weight_decay = 1e-5;
  double tau = 5e-3;        // soft target-update rate, applied every step
  int batch_size = 64;
  int episodes = 2000;
  int max_episode_steps = 500;
  std::size_t replay_capacity = 1'000'000;
  double huber_beta = 1.0;
  std::vector<int> hidden = {128, 128};
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.5;  // share of episodes the decay spans

  void validate() const;
};

// Exponential epsilon schedule: epsilon_start decaying to epsilon_end over
// the first epsilon_decay_fraction of the run, flat afterwards.
double epsilon_at(int episode, const Hyperparams& hp);

struct Experience {
  std::vector<double> s;
  int a = 0;
  double r = 0.0;
  std::vector<double> s2;
  bool terminal = false;
};

// Fixed-capacity ring buffer with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Experience e);
  std::size_t size() const { return store_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Experience& sample(Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Experience> store_;
};

// A trained greedy policy plus the metadata needed to refuse mismatched
// boards at load time.
struct Policy {
  std::string style;
  std::string fingerprint;
  int num_blocks = 0;
  int num_colors = 0;
  QNetwork net;

  // Argmax over Q-values; ties resolve to the lowest action index.
  int greedy_index(const std::vector<double>& encoded) const;
  Action greedy(const GameState& state) const;
};

struct TrainLogRow {
  int episode = 0;
  double loss = 0.0;     // mean per-update loss within the episode
  double ret = 0.0;      // accumulated shaped reward
  double epsilon = 0.0;
};

struct TrainResult {
  Policy policy;
  std::vector<TrainLogRow> log;
};

// One optimizer update from a uniformly sampled batch.  Targets come from
// the target network; terminal transitions bootstrap nothing.  Returns the
// mean Huber loss of the batch.
double train_step(QNetwork& policy, const QNetwork& target, const ReplayBuffer& replay,
                  AdamW& opt, const Hyperparams& hp, Rng& rng);

// Trains one style on a fixed board with the single-agent environment.
// Deterministic given (graph, config, hp, rng).  Throws TrainingError when
// the loss or return goes non-finite.
TrainResult train_policy(const StyleSpec& style, const BlockGraph& graph,
                         const GridConfig& config, const Hyperparams& hp, Rng& rng,
                         const std::function<void(const TrainLogRow&)>& progress = {});

// Plain-text checkpoints; loading validates shape metadata and rejects
// corrupt or truncated files with IoError.
void save_policy(const std::string& path, const Policy& policy);
Policy load_policy(const std::string& path);

// Training log as CSV with header episode,loss,return,epsilon.
std::string training_log_csv(const std::vector<TrainLogRow>& log);

}  // namespace gcg
