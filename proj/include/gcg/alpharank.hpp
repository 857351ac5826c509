#pragma once

#include <string>
#include <vector>

#include "gcg/payoff.hpp"

namespace gcg {

struct AlphaRankConfig {
  double alpha = 2.0;   // selection intensity
  int pop_size = 100;   // finite-population size m
  int populations = 2;  // 2 = one population per seat; 1 = symmetric single population
  double neutral_tol = 1e-12;  // |delta_f| below this counts as neutral drift

  void validate() const;
};

// Probability that one mutant with fitness advantage delta_f takes over a
// population of size m under logistic selection with intensity alpha.
// Exactly 1/m when |delta_f| is within the neutral tolerance; evaluated via
// expm1 so large alpha * m products neither overflow nor lose precision.
double fixation_probability(double alpha, int m, double delta_f, double neutral_tol = 1e-12);

// One unilateral strategy switch between profiles, with its fixation
// probability (before the uniform mutation factor eta is applied).
struct Deviation {
  int from = 0;
  int to = 0;
  double rho = 0.0;
};

// Row-stochastic Markov chain over profiles.  Off-diagonal mass exists only
// between profiles differing in exactly one population's strategy and equals
// eta * rho; diagonals absorb the remainder.
struct TransitionMatrix {
  int n_profiles = 0;
  double eta = 0.0;
  std::vector<double> c;  // row-major n_profiles^2
  std::vector<Deviation> deviations;

  double at(int i, int j) const { return c[static_cast<std::size_t>(i) * n_profiles + j]; }
};

TransitionMatrix transition_matrix(const PayoffTensor& t, const AlphaRankConfig& cfg);

struct StationaryResult {
  std::vector<double> pi;
  double residual = 0.0;  // max_j |(pi C)_j - pi_j| for the returned pi
  bool used_fallback = false;
  long iterations = 0;  // power-iteration count when the fallback ran
};

// Stationary distribution of the chain.  Primary path: direct linear solve
// of pi (C - I) = 0 with a normalization row.  If that fails to reach a
// 1e-12 residual (singular or ill-conditioned system), falls back to damped
// power iteration from the uniform vector and reports whatever residual the
// iteration cap allowed.
StationaryResult stationary_distribution(const TransitionMatrix& tm);

struct RankResult {
  AlphaRankConfig config;
  std::vector<std::string> profiles;  // "(row,col)" names, or strategy names when 1-pop
  std::vector<double> mass;           // stationary mass per profile
  std::vector<int> order;             // profile indices, mass descending (name breaks ties)
  TransitionMatrix transitions;
  StationaryResult solve;
};

// Full pipeline for one alpha: transition chain, stationary distribution,
// ranking order.
RankResult rank_profiles(const PayoffTensor& t, const AlphaRankConfig& cfg);

// start, start+step, ... up to end (inclusive, within float tolerance).
std::vector<double> alpha_grid(double start, double end, double step);

struct SweepResult {
  std::vector<std::string> profiles;
  std::vector<double> alphas;
  std::vector<std::vector<double>> mass;  // mass[k] aligned with profiles; empty on failure
  std::vector<double> residuals;          // NaN on failure
  std::vector<std::string> errors;        // empty string when the alpha succeeded
};

// Ranks at every alpha in the grid.  A failure at one alpha is recorded and
// the sweep moves on.
SweepResult alpha_sweep(const PayoffTensor& t, const AlphaRankConfig& base,
                        const std::vector<double>& alphas);

}  // namespace gcg
