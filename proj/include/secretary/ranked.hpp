#pragma once

#include <string>
#include <vector>

#include "secretary/strategy.hpp"

namespace secretary {

/// Probability that the active agent of rank j (1 = highest priority) ends
/// with the overall best award when everyone plays ThresholdStrategy with
/// `profile` under ranked ties. This is the first-place probability whenever
/// the overall best is allocated, which holds for equilibrium thresholds but
/// not for profiles that fill every agent before it can arrive.
/// Runs in O(n k^2) over (t, active count, best-so-far free).
std::vector<double> ranked_first_place(const ThresholdProfile& profile);

struct RankedEquilibrium {
  ThresholdProfile thresholds;
  std::vector<double> first_place;  ///< per agent, highest priority first
  bool converged = false;
  int sweeps = 0;
  /// Profiles visited by the last non-converging sweep sequence.
  std::vector<ThresholdProfile> cycle;
  /// Best responses that are not of threshold form.
  std::vector<std::string> warnings;
  /// T[l-1][l] >= T[l][l] >= T[l-1][l] - 1 for every l >= 2.
  bool threshold_gap_ok = true;
  /// p[k-1] - 1/n <= p[k] <= p[k-1].
  bool probability_gap_ok = true;
};

/// Best-response iteration over threshold profiles of the deferred ranked
/// game with the first-place objective. Stages with fewer active agents are
/// solved first; within a stage entries are updated from the lowest rank up
/// until a fixed point, seeded from the immediate-selection thresholds.
RankedEquilibrium ranked_equilibrium_thresholds(int n, int k, int max_sweeps = 200);

}  // namespace secretary
