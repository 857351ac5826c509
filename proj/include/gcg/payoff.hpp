#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gcg {

// Empirical two-player payoff table over named strategies.  Entry (i, j)
// holds both players' mean payoffs for the profile where strategy i sits in
// seat 1 and strategy j in seat 2, plus the number of games behind the mean.
struct PayoffTensor {
  std::vector<std::string> strategies;
  std::vector<double> p1;         // row-major n*n
  std::vector<double> p2;
  std::vector<long long> runs;

  int n() const { return static_cast<int>(strategies.size()); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n() + j; }

  double p1_at(int i, int j) const { return p1[idx(i, j)]; }
  double p2_at(int i, int j) const { return p2[idx(i, j)]; }

  int strategy_index(const std::string& name) const;  // -1 when absent

  // Shape consistency; throws ConfigError on violation.
  void validate() const;
};

// CSV round-trip.  Format: optional '#' comment lines, then the exact
// header row_strategy,column_strategy,p1,p2,n_runs, then one line per
// ordered profile.  Strategy order is the first-appearance order of row
// strategies, preserved on save so load/save round-trips byte for byte.
// Loading rejects missing or duplicate profiles, ragged rows and malformed
// numbers with IoError carrying the path and line number.
PayoffTensor load_payoff_csv(const std::string& path);
std::string payoff_csv(const PayoffTensor& t, const std::vector<std::string>& comments = {});
void save_payoff_csv(const std::string& path, const PayoffTensor& t,
                     const std::vector<std::string>& comments = {});

// All pure Nash equilibria under weak inequalities: profile (i, j) such
// that no unilateral deviation strictly improves the deviating player.
// Sorted by (row index, column index).
std::vector<std::pair<int, int>> pure_nash(const PayoffTensor& t);

// Cell-wise mean of payoffs across runs of the same experiment; run counts
// add up.  All inputs must share the identical strategy list, otherwise
// ConfigError names the mismatch.
PayoffTensor aggregate(const std::vector<PayoffTensor>& parts);

}  // namespace gcg
