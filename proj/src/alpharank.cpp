#include "gcg/alpharank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "gcg/errors.hpp"

namespace gcg {

void AlphaRankConfig::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("rank.alpha must be positive");
  if (pop_size < 2) throw ConfigError("rank.pop_size must be >= 2");
  if (populations != 1 && populations != 2) {
    throw ConfigError("rank.populations must be 1 or 2");
  }
  if (!(neutral_tol >= 0.0)) throw ConfigError("rank.neutral_tol must be non-negative");
}

double fixation_probability(double alpha, int m, double delta_f, double neutral_tol) {
  if (std::abs(delta_f) < neutral_tol) return 1.0 / m;
  const double z = alpha * delta_f;
  if (z > 0.0) {
    // Both expm1 arguments are negative: no overflow, full precision for
    // small z.
    return std::expm1(-z) / std::expm1(-static_cast<double>(m) * z);
  }
  // z < 0: factor out e^{-(m-1)|z|} so nothing overflows; the ratio of the
  // remaining expm1 terms stays in (0, 1].
  const double a = -z;
  return std::exp(-(static_cast<double>(m) - 1.0) * a) * std::expm1(-a) /
         std::expm1(-static_cast<double>(m) * a);
}

TransitionMatrix transition_matrix(const PayoffTensor& t, const AlphaRankConfig& cfg) {
  cfg.validate();
  t.validate();
  const int n = t.n();
  if (cfg.populations == 1 && n < 2) {
    throw ConfigError("single-population ranking needs at least 2 strategies");
  }

  TransitionMatrix tm;
  if (cfg.populations == 1) {
    tm.n_profiles = n;
    tm.eta = 1.0 / (n - 1);
  } else {
    tm.n_profiles = n * n;
    // eta = 1 / sum_k (|strategies_k| - 1); both populations share the set.
    tm.eta = n > 1 ? 1.0 / (2.0 * (n - 1)) : 0.0;
  }
  tm.c.assign(static_cast<std::size_t>(tm.n_profiles) * tm.n_profiles, 0.0);

  const auto set = [&](int from, int to, double rho) {
    tm.c[static_cast<std::size_t>(from) * tm.n_profiles + to] = tm.eta * rho;
    tm.deviations.push_back({from, to, rho});
  };

  if (cfg.populations == 1) {
    // Monomorphic resident i challenged by a mutant j; fitness is the payoff
    // against the resident.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double df = t.p1_at(j, i) - t.p1_at(i, i);
        set(i, j, fixation_probability(cfg.alpha, cfg.pop_size, df, cfg.neutral_tol));
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int p = i * n + j;
        for (int i2 = 0; i2 < n; ++i2) {
          if (i2 == i) continue;
          const double df = t.p1_at(i2, j) - t.p1_at(i, j);
          set(p, i2 * n + j,
              fixation_probability(cfg.alpha, cfg.pop_size, df, cfg.neutral_tol));
        }
        for (int j2 = 0; j2 < n; ++j2) {
          if (j2 == j) continue;
          const double df = t.p2_at(i, j2) - t.p2_at(i, j);
          set(p, i * n + j2,
              fixation_probability(cfg.alpha, cfg.pop_size, df, cfg.neutral_tol));
        }
      }
    }
  }

  // Diagonal absorbs the leftover probability; rows must stay stochastic.
  for (int p = 0; p < tm.n_profiles; ++p) {
    double row_sum = 0.0;
    for (int q = 0; q < tm.n_profiles; ++q) row_sum += tm.at(p, q);
    if (row_sum > 1.0 + 1e-9) {
      throw ConfigError("transition row exceeds 1; eta normalization is broken");
    }
    tm.c[static_cast<std::size_t>(p) * tm.n_profiles + p] = 1.0 - row_sum;
  }
  return tm;
}

namespace {

double residual_inf(const TransitionMatrix& tm, const std::vector<double>& pi) {
  const int n = tm.n_profiles;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double pj = 0.0;
    for (int i = 0; i < n; ++i) pj += pi[i] * tm.at(i, j);
    worst = std::max(worst, std::abs(pj - pi[j]));
  }
  return worst;
}

bool direct_solve(const TransitionMatrix& tm, StationaryResult& out) {
  const int n = tm.n_profiles;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      C(tm.c.data(), n, n);
  // pi C = pi  <=>  (C - I)^T pi^T = 0; swap the last equation for sum = 1.
  Eigen::MatrixXd A = (C - Eigen::MatrixXd::Identity(n, n)).transpose();
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd x = lu.solve(b);
  // One round of iterative refinement squeezes the last digits out of an
  // otherwise well-conditioned system.
  x += lu.solve(b - A * x);

  if (!x.allFinite()) return false;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x(i) < 0.0) {
      // Tiny negative round-off is fine; anything material means the solve
      // is untrustworthy.
      if (x(i) < -1e-9) return false;
      x(i) = 0.0;
    }
    sum += x(i);
  }
  if (!(sum > 0.0)) return false;

  out.pi.resize(n);
  for (int i = 0; i < n; ++i) out.pi[i] = x(i) / sum;
  out.residual = residual_inf(tm, out.pi);
  out.used_fallback = false;
  out.iterations = 0;
  return std::isfinite(out.residual) && out.residual < 1e-12;
}

void power_iteration(const TransitionMatrix& tm, StationaryResult& out) {
  const int n = tm.n_profiles;
  const double damping = 1e-8;
  const long cap = 100000;

  std::vector<double> pi(n, 1.0 / n), next(n, 0.0);
  long it = 0;
  for (it = 0; it < cap; ++it) {
    double resid = 0.0;
    for (int j = 0; j < n; ++j) {
      double pj = 0.0;
      for (int i = 0; i < n; ++i) pj += pi[i] * tm.at(i, j);
      resid = std::max(resid, std::abs(pj - pi[j]));
      // The damping toward uniform guarantees a unique fixed point even for
      // reducible chains; it perturbs pi by at most 1e-8.
      next[j] = (1.0 - damping) * pj + damping / n;
    }
    double sum = 0.0;
    for (double v : next) sum += v;
    for (int j = 0; j < n; ++j) pi[j] = next[j] / sum;
    if (resid < 1e-12) {
      ++it;
      break;
    }
  }
  out.pi = pi;
  out.residual = residual_inf(tm, pi);
  out.used_fallback = true;
  out.iterations = it;
}

}  // namespace

StationaryResult stationary_distribution(const TransitionMatrix& tm) {
  if (tm.n_profiles < 1) throw ConfigError("stationary_distribution: empty chain");
  StationaryResult out;
  if (tm.n_profiles == 1) {
    out.pi = {1.0};
    out.residual = 0.0;
    return out;
  }
  if (direct_solve(tm, out)) return out;
  power_iteration(tm, out);
  return out;
}

RankResult rank_profiles(const PayoffTensor& t, const AlphaRankConfig& cfg) {
  RankResult r;
  r.config = cfg;
  r.transitions = transition_matrix(t, cfg);

  const int n = t.n();
  if (cfg.populations == 1) {
    r.profiles = t.strategies;
  } else {
    r.profiles.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        r.profiles.push_back("(" + t.strategies[i] + "," + t.strategies[j] + ")");
      }
    }
  }

  r.solve = stationary_distribution(r.transitions);
  r.mass = r.solve.pi;

  r.order.resize(r.profiles.size());
  for (std::size_t i = 0; i < r.order.size(); ++i) r.order[i] = static_cast<int>(i);
  std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    if (r.mass[a] != r.mass[b]) return r.mass[a] > r.mass[b];
    return r.profiles[a] < r.profiles[b];
  });
  return r;
}

std::vector<double> alpha_grid(double start, double end, double step) {
  if (!(start > 0.0)) throw ConfigError("alpha grid start must be positive");
  if (!(step > 0.0)) throw ConfigError("alpha grid step must be positive");
  if (end < start) throw ConfigError("alpha grid end must be >= start");
  std::vector<double> grid;
  // start + k*step rather than cumulative addition, so drift cannot push
  // points off the grid; the tolerance keeps the endpoint inclusive.
  for (long k = 0;; ++k) {
    const double a = start + static_cast<double>(k) * step;
    if (a > end + step * 1e-9) break;
    grid.push_back(a);
  }
  return grid;
}

SweepResult alpha_sweep(const PayoffTensor& t, const AlphaRankConfig& base,
                        const std::vector<double>& alphas) {
  SweepResult sweep;
  sweep.alphas = alphas;
  {
    AlphaRankConfig probe = base;
    probe.validate();
  }
  const int n = t.n();
  if (base.populations == 1) {
    sweep.profiles = t.strategies;
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        sweep.profiles.push_back("(" + t.strategies[i] + "," + t.strategies[j] + ")");
      }
    }
  }
  for (double a : alphas) {
    AlphaRankConfig cfg = base;
    cfg.alpha = a;
    try {
      const RankResult r = rank_profiles(t, cfg);
      sweep.mass.push_back(r.mass);
      sweep.residuals.push_back(r.solve.residual);
      sweep.errors.emplace_back();
    } catch (const std::exception& e) {
      sweep.mass.emplace_back();
      sweep.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
      sweep.errors.emplace_back(e.what());
    }
  }
  return sweep;
}

}  // namespace gcg
