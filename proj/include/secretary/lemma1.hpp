#pragma once

#include <vector>

#include "secretary/exact.hpp"

namespace secretary {

/// (probability of first place, probability of second place)
struct PlacePair {
  double first = 0.0;
  double second = 0.0;
};

/// Lower bounds on agent i's (first, second) place probabilities under sigma
/// for the four availability classes of the best and second-best award so far:
///   A  both free              (observed before the selections of time t)
///   B  best free, second not  (before the selections of time t)
///   C  best taken, second free (after the allocations of time t)
///   D  both taken              (after the allocations of time t)
struct BoundQuadruple {
  PlacePair A, B, C, D;
};

/// Closed-form bounds for 1 <= t <= n and l active agents (l >= 1).
BoundQuadruple lemma1_bounds(int n, int t, int l);

struct Lemma1Row {
  int t = 0;
  int l = 0;
  char state_class = 'A';
  double reach = 0.0;   ///< probability that the class occurs with agent 1 active
  PlacePair exact;      ///< conditional place probabilities given the class
  PlacePair worst;      ///< minimum over the individual states of the class
  PlacePair bound;
  double slack = 0.0;   ///< min over coordinates of exact - bound
};

struct Lemma1Report {
  int n = 0;
  int k = 0;
  std::vector<Lemma1Row> rows;
  int violations = 0;        ///< rows whose conditional pair falls below the bound
  int state_violations = 0;  ///< rows with some individual state below the bound
  double min_slack = 0.0;
};

/// Evaluates agent 1 under the all-sigma profile (random ties) in every
/// reachable (t, l, class) and compares with lemma1_bounds. Violations are
/// counted, not thrown.
Lemma1Report check_lemma1(int n, int k, const ExactLimits& limits = {});

}  // namespace secretary
