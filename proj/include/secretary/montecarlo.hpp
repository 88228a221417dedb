#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secretary/engine.hpp"
#include "secretary/strategy.hpp"

namespace secretary {

inline constexpr double kZ99 = 2.576;

struct EstimateReport {
  std::string quantity;
  double estimate = 0.0;
  double std_error = 0.0;  ///< from the sample variance
  double ci99 = 0.0;       ///< kZ99 * std_error
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  /// Worker threads; results do not depend on it.
  int threads = 1;
};

/// Everything measured on one batch of playouts. Trial i uses substream i of
/// the seed, and sums are reduced in trial order, so reports are identical
/// for any thread count.
struct SimulationReport {
  int n = 0;
  int k = 0;
  TieRule tie = TieRule::Random;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<EstimateReport>> places;  ///< [agent][place - 1]
  std::vector<EstimateReport> top_award;            ///< per agent
  EstimateReport forced;                            ///< a forced endgame assignment happened
  EstimateReport welfare;
  EstimateReport welfare_ratio;                     ///< welfare / OPT
  double opt = 0.0;
  EstimateReport selected_before_topk;              ///< awards taken before the first top-k arrival
  EstimateReport unselected_topk;                   ///< top-k awards nobody holds
  std::vector<EstimateReport> rank_selected;        ///< [global rank - 1]
};

SimulationReport simulate(const Profile& profile, int n, int k, TieRule tie, const ValueProfile& values,
                          const McOptions& options);

/// Place frequencies, [agent][place - 1].
std::vector<std::vector<EstimateReport>> estimate_places(const Profile& profile, int n, int k, TieRule tie,
                                                         const McOptions& options);

struct WelfareEstimate {
  EstimateReport welfare;
  EstimateReport ratio;
  double opt = 0.0;
};

WelfareEstimate estimate_welfare(const Profile& profile, const ValueProfile& values, int k, TieRule tie,
                                 const McOptions& options);

struct TopKStats {
  EstimateReport selected_before_topk;
  EstimateReport unselected_topk;
  std::vector<EstimateReport> rank_selected;
  bool selected_before_below_one = false;  ///< estimate + ci99 < 1
  bool unselected_below_one = false;       ///< estimate + ci99 < 1
  bool rank_monotone = false;              ///< non-increasing in rank within the joint CI
};

TopKStats topk_selection_stats(const Profile& profile, int n, int k, TieRule tie, const McOptions& options);
TopKStats topk_stats_of(const SimulationReport& report);

/// Probability that none of the k best awards is among the first
/// floor(n/k) + 1 arrivals.
double welfare_gap_constant(int n, int k);

struct WelfareUpperReport {
  EstimateReport ratio;         ///< measured welfare / OPT under sigma
  double c = 0.0;               ///< welfare_gap_constant(n, k)
  double c_limit = 0.0;         ///< ((k - 1)/k)^k
  double bound = 0.0;           ///< 1 - c/k
  bool within_bound = false;    ///< ratio <= bound + ci99
  bool gap_positive = false;    ///< 1 - ratio > ci99
};

/// Sigma profile on k ones followed by zeros, compared with the upper bound.
WelfareUpperReport welfare_upper_example(int n, int k, const McOptions& options);
WelfareUpperReport welfare_upper_of(const SimulationReport& report);

}  // namespace secretary
