#include "gcg/payoff.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gcg/errors.hpp"
#include "gcg/io.hpp"

namespace gcg {

namespace {
const char* kHeader = "row_strategy,column_strategy,p1,p2,n_runs";
}

int PayoffTensor::strategy_index(const std::string& name) const {
  for (int i = 0; i < n(); ++i) {
    if (strategies[i] == name) return i;
  }
  return -1;
}

void PayoffTensor::validate() const {
  const std::size_t cells = static_cast<std::size_t>(n()) * n();
  if (n() == 0) throw ConfigError("payoff tensor has no strategies");
  if (p1.size() != cells || p2.size() != cells || runs.size() != cells) {
    throw ConfigError("payoff tensor storage does not match strategy count");
  }
  for (int i = 0; i < n(); ++i) {
    for (int j = i + 1; j < n(); ++j) {
      if (strategies[i] == strategies[j]) {
        throw ConfigError("duplicate strategy name '" + strategies[i] + "'");
      }
    }
  }
}

PayoffTensor load_payoff_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  int line_no = 0;
  bool header_seen = false;

  std::vector<std::string> order;           // first-appearance row order
  std::map<std::string, int> row_index;
  struct Entry {
    double p1, p2;
    long long runs;
  };
  std::map<std::pair<std::string, std::string>, Entry> entries;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (t != kHeader) {
        throw IoError(where + ": expected header '" + kHeader + "', got '" + t + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_csv_line(t);
    if (fields.size() != 5) {
      throw IoError(where + ": expected 5 fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw IoError(where + ": empty strategy name");
    }
    Entry e;
    e.p1 = parse_double(fields[2], where + " (p1)");
    e.p2 = parse_double(fields[3], where + " (p2)");
    e.runs = parse_int(fields[4], where + " (n_runs)");
    if (e.runs < 0) throw IoError(where + ": n_runs must be non-negative");
    const auto key = std::make_pair(fields[0], fields[1]);
    if (entries.count(key)) {
      throw IoError(where + ": duplicate profile (" + fields[0] + ", " + fields[1] + ")");
    }
    entries[key] = e;
    if (!row_index.count(fields[0])) {
      row_index[fields[0]] = static_cast<int>(order.size());
      order.push_back(fields[0]);
    }
  }
  if (!header_seen) throw IoError(path + ": no header row found");
  if (order.empty()) throw IoError(path + ": no payoff rows found");

  // Column names must be exactly the row names, and the table complete.
  for (const auto& [key, e] : entries) {
    if (!row_index.count(key.second)) {
      throw IoError(path + ": column strategy '" + key.second +
                    "' never appears as a row strategy");
    }
  }
  const int n = static_cast<int>(order.size());
  if (entries.size() != static_cast<std::size_t>(n) * n) {
    throw IoError(path + ": incomplete table, expected " + std::to_string(n * n) +
                  " profiles, got " + std::to_string(entries.size()));
  }

  PayoffTensor t;
  t.strategies = order;
  t.p1.resize(static_cast<std::size_t>(n) * n);
  t.p2.resize(t.p1.size());
  t.runs.resize(t.p1.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto it = entries.find(std::make_pair(order[i], order[j]));
      if (it == entries.end()) {
        throw IoError(path + ": missing profile (" + order[i] + ", " + order[j] + ")");
      }
      t.p1[t.idx(i, j)] = it->second.p1;
      t.p2[t.idx(i, j)] = it->second.p2;
      t.runs[t.idx(i, j)] = it->second.runs;
    }
  }
  t.validate();
  return t;
}

std::string payoff_csv(const PayoffTensor& t, const std::vector<std::string>& comments) {
  t.validate();
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  out << kHeader << "\n";
  for (int i = 0; i < t.n(); ++i) {
    for (int j = 0; j < t.n(); ++j) {
      out << t.strategies[i] << "," << t.strategies[j] << ","
          << format_double(t.p1_at(i, j)) << "," << format_double(t.p2_at(i, j)) << ","
          << t.runs[t.idx(i, j)] << "\n";
    }
  }
  return out.str();
}

void save_payoff_csv(const std::string& path, const PayoffTensor& t,
                     const std::vector<std::string>& comments) {
  write_atomic(path, payoff_csv(t, comments));
}

std::vector<std::pair<int, int>> pure_nash(const PayoffTensor& t) {
  t.validate();
  std::vector<std::pair<int, int>> result;
  const int n = t.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      bool stable = true;
      for (int k = 0; k < n && stable; ++k) {
        if (t.p1_at(k, j) > t.p1_at(i, j)) stable = false;  // row player deviates
      }
      for (int k = 0; k < n && stable; ++k) {
        if (t.p2_at(i, k) > t.p2_at(i, j)) stable = false;  // column player deviates
      }
      if (stable) result.emplace_back(i, j);
    }
  }
  return result;
}

PayoffTensor aggregate(const std::vector<PayoffTensor>& parts) {
  if (parts.empty()) throw ConfigError("aggregate: no inputs");
  for (const auto& p : parts) p.validate();
  const auto& names = parts.front().strategies;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].strategies != names) {
      std::string msg = "aggregate: input " + std::to_string(k) +
                        " has a different strategy list (";
      for (const auto& s : parts[k].strategies) msg += s + " ";
      msg += "vs ";
      for (const auto& s : names) msg += s + " ";
      msg += ")";
      throw ConfigError(msg);
    }
  }
  PayoffTensor out = parts.front();
  for (std::size_t c = 0; c < out.p1.size(); ++c) {
    double s1 = 0.0, s2 = 0.0;
    long long r = 0;
    for (const auto& p : parts) {
      s1 += p.p1[c];
      s2 += p.p2[c];
      r += p.runs[c];
    }
    out.p1[c] = s1 / static_cast<double>(parts.size());
    out.p2[c] = s2 / static_cast<double>(parts.size());
    out.runs[c] = r;
  }
  return out;
}

}  // namespace gcg
