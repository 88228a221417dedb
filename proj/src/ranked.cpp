#include "secretary/ranked.hpp"

#include <algorithm>
#include <array>

#include "secretary/stopping.hpp"
#include "secretary/types.hpp"

namespace secretary {

namespace {

constexpr double kTol = 1e-12;

// Stage values: for each active count l, V(t, b)[j] at decision time t
// (after the arrival of t), b = best so far free, j = 1..l.
class StageValues {
 public:
  StageValues(int n, int k) : n_(n), data_(static_cast<std::size_t>(k) + 1) {
    for (int l = 1; l <= k; ++l) data_[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>((n + 2) * 2 * l), 0.0);
  }

  double& at(int l, int t, bool b, int j) {
    return data_[static_cast<std::size_t>(l)][static_cast<std::size_t>(((t * 2) + (b ? 1 : 0)) * l + (j - 1))];
  }
  double at(int l, int t, bool b, int j) const {
    return data_[static_cast<std::size_t>(l)][static_cast<std::size_t>(((t * 2) + (b ? 1 : 0)) * l + (j - 1))];
  }
  /// Value of rank j right after the allocations of time t.
  double after(int l, int t, bool b, int j) const {
    if (l == 0 || t >= n_) return 0.0;
    const double fresh = 1.0 / (t + 1);
    return fresh * at(l, t + 1, true, j) + (1.0 - fresh) * at(l, t + 1, b, j);
  }

 private:
  int n_;
  std::vector<std::vector<double>> data_;
};

/// Rank of the agent after the winner w left, for an agent at rank j != w.
int shifted(int j, int w) { return j > w ? j - 1 : j; }

void evaluate_stage(const ThresholdProfile& profile, int l, StageValues& values) {
  const int n = profile.n;
  for (int t = n; t >= 1; --t) {
    const double win = static_cast<double>(t) / n;
    const bool tail = t > n - l;  // the lowest-ranked agent grabs the max available
    for (int j = 1; j <= l; ++j) {
      // best so far taken: only the lowest-ranked agent may act
      if (tail) {
        values.at(l, t, false, j) = j == l ? 0.0 : values.after(l - 1, t, false, j);
      } else {
        values.at(l, t, false, j) = values.after(l, t, false, j);
      }
    }
    int winner = 0;
    for (int h = 1; h <= l && winner == 0; ++h) {
      if (t >= profile.at(h, l) || (tail && h == l)) winner = h;
    }
    for (int j = 1; j <= l; ++j) {
      if (winner == 0) {
        values.at(l, t, true, j) = values.after(l, t, true, j);
      } else if (j == winner) {
        values.at(l, t, true, j) = win;
      } else {
        values.at(l, t, true, j) = values.after(l - 1, t, false, shifted(j, winner));
      }
    }
  }
}

/// Best threshold for rank j among l active agents, all other entries fixed.
int best_threshold(const ThresholdProfile& profile, int l, int j, const StageValues& values,
                   std::vector<std::string>& warnings) {
  const int n = profile.n;
  enum class Choice { Select, Pass, Moot };
  std::vector<Choice> choice(static_cast<std::size_t>(n) + 1, Choice::Pass);
  std::vector<bool> strict_select(static_cast<std::size_t>(n) + 1, false);
  // own[t][b]: value of rank j at decision time t under its optimal play
  std::vector<std::array<double, 2>> own(static_cast<std::size_t>(n) + 2, {0.0, 0.0});
  auto own_after = [&](int t, bool b) {
    if (t >= n) return 0.0;
    const double fresh = 1.0 / (t + 1);
    return fresh * own[static_cast<std::size_t>(t + 1)][1] + (1.0 - fresh) * own[static_cast<std::size_t>(t + 1)][b ? 1 : 0];
  };
  for (int t = n; t >= 1; --t) {
    const double win = static_cast<double>(t) / n;
    const bool tail = t > n - l;
    const auto ut = static_cast<std::size_t>(t);
    if (tail) {
      own[ut][0] = j == l ? 0.0 : values.after(l - 1, t, false, j);
    } else {
      own[ut][0] = own_after(t, false);
    }
    int other = 0;  // highest-priority other selector
    for (int h = 1; h <= l && other == 0; ++h) {
      if (h != j && (t >= profile.at(h, l) || (tail && h == l))) other = h;
    }
    auto outcome = [&](int w) {
      if (w == 0) return own_after(t, true);
      if (w == j) return win;
      return values.after(l - 1, t, false, shifted(j, w));
    };
    const int with_me = other == 0 ? j : std::min(other, j);
    const double select = outcome(with_me);
    const double pass = outcome(other);
    if (other != 0 && other < j) {
      choice[ut] = Choice::Moot;
      own[ut][1] = pass;
    } else if ((tail && j == l) || select >= pass - kTol) {
      choice[ut] = Choice::Select;
      strict_select[ut] = select > pass + kTol;
      own[ut][1] = select;
    } else {
      choice[ut] = Choice::Pass;
      own[ut][1] = pass;
    }
  }
  int threshold = n + 1;
  while (threshold > 1 && choice[static_cast<std::size_t>(threshold - 1)] != Choice::Pass) --threshold;
  for (int t = 1; t < threshold; ++t) {
    if (strict_select[static_cast<std::size_t>(t)]) {
      warnings.push_back("rank " + std::to_string(j) + " of " + std::to_string(l) + " prefers selecting at t=" +
                         std::to_string(t) + " below its threshold " + std::to_string(threshold));
      break;
    }
  }
  return std::min(threshold, n);
}

}  // namespace

std::vector<double> ranked_first_place(const ThresholdProfile& profile) {
  const int n = profile.n;
  const int k = profile.k;
  if (k < 1 || k > n) throw InvalidParameters("threshold profile needs 1 <= k <= n");
  StageValues values(n, k);
  for (int l = 1; l <= k; ++l) evaluate_stage(profile, l, values);
  std::vector<double> p(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) p[static_cast<std::size_t>(j - 1)] = values.at(k, 1, true, j);
  return p;
}

RankedEquilibrium ranked_equilibrium_thresholds(int n, int k, int max_sweeps) {
  if (k < 1 || k > n) throw InvalidParameters("ranked_equilibrium_thresholds needs 1 <= k <= n");
  if (k > 8) throw SizeLimitError("ranked.k", 8, static_cast<std::size_t>(k));

  RankedEquilibrium result;
  ThresholdProfile profile(n, k, n);
  for (int l = 1; l <= k; ++l) {
    const ImmediateThresholds seed = immediate_thresholds(n, l);
    for (int j = 1; j <= l; ++j) profile.at(j, l) = std::clamp(seed.T[static_cast<std::size_t>(j - 1)], 1, n);
  }

  StageValues values(n, k);
  result.converged = true;
  for (int l = 1; l <= k; ++l) {
    std::vector<ThresholdProfile> visited;
    bool stable = false;
    for (int sweep = 0; sweep < max_sweeps && !stable; ++sweep) {
      ++result.sweeps;
      visited.push_back(profile);
      stable = true;
      std::vector<std::string> warnings;
      for (int j = l; j >= 1; --j) {
        evaluate_stage(profile, l, values);
        const int updated = best_threshold(profile, l, j, values, warnings);
        if (updated != profile.at(j, l)) {
          profile.at(j, l) = updated;
          stable = false;
        }
      }
      if (stable) result.warnings.insert(result.warnings.end(), warnings.begin(), warnings.end());
    }
    evaluate_stage(profile, l, values);
    if (!stable) {
      result.converged = false;
      result.cycle = std::move(visited);
      break;
    }
  }

  result.thresholds = profile;
  for (int l = 1; l <= k; ++l) evaluate_stage(profile, l, values);
  for (int j = 1; j <= k; ++j) result.first_place.push_back(values.at(k, 1, true, j));
  for (int l = 2; l <= k; ++l) {
    const int upper = profile.at(l - 1, l);
    const int lower = profile.at(l, l);
    if (!(upper >= lower && lower >= upper - 1)) result.threshold_gap_ok = false;
  }
  if (k >= 2) {
    const double pk = result.first_place[static_cast<std::size_t>(k - 1)];
    const double pk1 = result.first_place[static_cast<std::size_t>(k - 2)];
    result.probability_gap_ok = pk1 - 1.0 / n - kTol <= pk && pk <= pk1 + kTol;
  }
  return result;
}

}  // namespace secretary
