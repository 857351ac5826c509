#include "gcg/net.hpp"

#include <cmath>
#include <stdexcept>

#include "gcg/errors.hpp"

namespace gcg {

QNetwork::QNetwork(int input_dim, const std::vector<int>& hidden, int output_dim) {
  if (input_dim < 1 || output_dim < 1) throw ConfigError("network dims must be positive");
  if (hidden.empty()) throw ConfigError("network needs at least one hidden layer");
  dims_.push_back(input_dim);
  for (int h : hidden) {
    if (h < 1) throw ConfigError("hidden layer width must be positive");
    dims_.push_back(h);
  }
  dims_.push_back(output_dim);

  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    w_off_.push_back(total);
    total += static_cast<std::size_t>(dims_[l]) * dims_[l + 1];
    b_off_.push_back(total);
    total += dims_[l + 1];
  }
  params_.assign(total, 0.0);
}

void QNetwork::init(Rng& rng) {
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    const int fan_in = dims_[l];
    const double bound = std::sqrt(6.0 / fan_in);  // He-uniform for ReLU
    double* w = params_.data() + w_off_[l];
    const std::size_t n = static_cast<std::size_t>(dims_[l]) * dims_[l + 1];
    for (std::size_t i = 0; i < n; ++i) w[i] = rng.uniform(-bound, bound);
    double* b = params_.data() + b_off_[l];
    for (int i = 0; i < dims_[l + 1]; ++i) b[i] = 0.0;
  }
}

const std::vector<double>& QNetwork::forward(const std::vector<double>& x, Workspace& ws) const {
  if (static_cast<int>(x.size()) != dims_.front()) {
    throw std::invalid_argument("QNetwork::forward: input size mismatch");
  }
  ws.act.resize(dims_.size());
  ws.act[0] = x;
  const std::size_t n_layers = dims_.size() - 1;
  for (std::size_t l = 0; l < n_layers; ++l) {
    const int in = dims_[l], out = dims_[l + 1];
    const double* w = params_.data() + w_off_[l];
    const double* b = params_.data() + b_off_[l];
    const double* prev = ws.act[l].data();
    ws.act[l + 1].assign(out, 0.0);
    double* cur = ws.act[l + 1].data();
    for (int o = 0; o < out; ++o) {
      double s = b[o];
      const double* row = w + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) s += row[i] * prev[i];
      // ReLU on every layer but the last.
      cur[o] = (l + 1 < n_layers && s < 0.0) ? 0.0 : s;
    }
  }
  return ws.act.back();
}

std::vector<double> QNetwork::forward(const std::vector<double>& x) const {
  Workspace ws;
  return forward(x, ws);
}

void QNetwork::backward(const Workspace& ws, int action, double scale,
                        std::vector<double>& grad) const {
  if (grad.size() != params_.size()) {
    throw std::invalid_argument("QNetwork::backward: grad size mismatch");
  }
  if (action < 0 || action >= dims_.back()) {
    throw std::out_of_range("QNetwork::backward: action outside output range");
  }
  const std::size_t n_layers = dims_.size() - 1;

  // Seed with d out[action] = scale, then walk the layers backwards.
  std::vector<double>& delta = const_cast<Workspace&>(ws).delta;
  std::vector<double>& delta_next = const_cast<Workspace&>(ws).delta_next;
  delta.assign(dims_.back(), 0.0);
  delta[action] = scale;

  for (std::size_t l = n_layers; l-- > 0;) {
    const int in = dims_[l], out = dims_[l + 1];
    const double* w = params_.data() + w_off_[l];
    const double* prev = ws.act[l].data();
    double* gw = grad.data() + w_off_[l];
    double* gb = grad.data() + b_off_[l];

    delta_next.assign(in, 0.0);
    for (int o = 0; o < out; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      gb[o] += d;
      const double* row = w + static_cast<std::size_t>(o) * in;
      double* grow = gw + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) {
        grow[i] += d * prev[i];
        delta_next[i] += d * row[i];
      }
    }
    if (l > 0) {
      // Gate by the ReLU that produced act[l].
      for (int i = 0; i < in; ++i) {
        if (prev[i] <= 0.0) delta_next[i] = 0.0;
      }
    }
    std::swap(delta, delta_next);
  }
}

void soft_update(QNetwork& target, const QNetwork& source, double tau) {
  if (target.dims() != source.dims()) {
    throw std::invalid_argument("soft_update: network shapes differ");
  }
  auto& t = target.params();
  const auto& s = source.params();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += tau * (s[i] - t[i]);
}

double huber(double residual, double beta) {
  const double a = std::abs(residual);
  if (a < beta) return 0.5 * residual * residual / beta;
  return a - 0.5 * beta;
}

double huber_grad(double residual, double beta) {
  if (std::abs(residual) < beta) return residual / beta;
  return residual > 0.0 ? 1.0 : -1.0;
}

AdamW::AdamW(std::size_t n_params, double lr, double weight_decay, double beta1, double beta2,
             double eps)
    : lr_(lr), wd_(weight_decay), beta1_(beta1), beta2_(beta2), eps_(eps),
      m_(n_params, 0.0), v_(n_params, 0.0) {}

void AdamW::step(std::vector<double>& params, const std::vector<double>& grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw std::invalid_argument("AdamW::step: size mismatch");
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, t_);
  const double bc2 = 1.0 - std::pow(beta2_, t_);
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    const double mhat = m_[i] / bc1;
    const double vhat = v_[i] / bc2;
    // Decoupled weight decay: applied directly to the parameter, not the
    // gradient.
    params[i] -= lr_ * (mhat / (std::sqrt(vhat) + eps_) + wd_ * params[i]);
  }
}

}  // namespace gcg
