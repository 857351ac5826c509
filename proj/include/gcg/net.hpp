#pragma once

#include <cstddef>
#include <vector>

#include "gcg/rng.hpp"

namespace gcg {

// Fully-connected ReLU network with a linear output layer, parameters held
// in one flat vector (weights row-major, then biases, per layer).  The flat
// layout makes the optimizer, soft target updates and checkpointing trivial.
class QNetwork {
 public:
  // Scratch space for a cached forward pass; reusing one workspace avoids
  // per-call allocation in the training loop.
  struct Workspace {
    std::vector<std::vector<double>> act;  // act[0] = input copy, act.back() = output
    std::vector<double> delta, delta_next;
  };

  QNetwork() = default;
  QNetwork(int input_dim, const std::vector<int>& hidden, int output_dim);

  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  const std::vector<int>& dims() const { return dims_; }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  // He-uniform weight init, zero biases.
  void init(Rng& rng);

  std::vector<double> forward(const std::vector<double>& x) const;

  // Forward pass that caches activations for a later backward call.
  // Returns a reference to the output stored in `ws`.
  const std::vector<double>& forward(const std::vector<double>& x, Workspace& ws) const;

  // Accumulates scale * d Q(x)[action] / d theta into `grad` using the
  // activations cached by the previous forward(x, ws) call.
  void backward(const Workspace& ws, int action, double scale, std::vector<double>& grad) const;

 private:
  std::vector<int> dims_;           // layer widths, input first
  std::vector<std::size_t> w_off_;  // per-layer offsets into params_
  std::vector<std::size_t> b_off_;
  std::vector<double> params_;
};

// theta_target <- tau * theta_source + (1 - tau) * theta_target.
// Throws std::invalid_argument when the shapes differ.
void soft_update(QNetwork& target, const QNetwork& source, double tau);

// Smooth-L1 (Huber) loss and its derivative in the residual.
double huber(double residual, double beta);
double huber_grad(double residual, double beta);

// AdamW: Adam moments with bias correction plus decoupled weight decay.
class AdamW {
 public:
  AdamW(std::size_t n_params, double lr, double weight_decay, double beta1 = 0.9,
        double beta2 = 0.999, double eps = 1e-8);

  void step(std::vector<double>& params, const std::vector<double>& grad);

 private:
  double lr_, wd_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace gcg
