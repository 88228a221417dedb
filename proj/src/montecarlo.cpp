#include "secretary/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace secretary {

namespace {

constexpr std::uint64_t kChunk = 4096;

struct Moments {
  std::vector<double> sum;
  std::vector<double> sumsq;

  explicit Moments(std::size_t m = 0) : sum(m, 0.0), sumsq(m, 0.0) {}
  void add(const std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum[i] += x[i];
      sumsq[i] += x[i] * x[i];
    }
  }
  void merge(const Moments& other) {
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += other.sum[i];
      sumsq[i] += other.sumsq[i];
    }
  }
};

EstimateReport report_of(std::string name, const Moments& m, std::size_t i, const McOptions& options,
                         double scale = 1.0) {
  const double N = static_cast<double>(options.trials);
  const double mean = m.sum[i] / N;
  double var = 0.0;
  if (options.trials > 1) var = std::max(0.0, (m.sumsq[i] - N * mean * mean) / (N - 1));
  EstimateReport r;
  r.quantity = std::move(name);
  r.estimate = mean * scale;
  r.std_error = std::sqrt(var / N) * scale;
  r.ci99 = kZ99 * r.std_error;
  r.trials = options.trials;
  r.seed = options.seed;
  return r;
}

}  // namespace

SimulationReport simulate(const Profile& profile, int n, int k, TieRule tie, const ValueProfile& values,
                          const McOptions& options) {
  if (k < 1 || k > n) throw InvalidParameters("need 1 <= k <= n");
  if (static_cast<int>(profile.size()) != k) throw InvalidParameters("profile must hold one strategy per agent");
  if (values.n() != n) throw InvalidParameters("value profile length differs from n");
  if (options.trials < 1) throw InvalidParameters("trials must be at least 1");

  const auto K = static_cast<std::size_t>(k);
  const auto Nn = static_cast<std::size_t>(n);
  // Layout of the per-trial vector.
  const std::size_t top_at = K * K;
  const std::size_t forced_at = top_at + K;
  const std::size_t welfare_at = forced_at + 1;
  const std::size_t before_at = welfare_at + 1;
  const std::size_t unselected_at = before_at + 1;
  const std::size_t rank_at = unselected_at + 1;
  const std::size_t width = rank_at + Nn;

  const std::uint64_t chunks = (options.trials + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks, Moments(width));
  std::atomic<std::uint64_t> next_chunk{0};

  auto worker = [&]() {
    std::vector<double> x(width);
    for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
      Moments& m = partial[c];
      const std::uint64_t end = std::min(options.trials, (c + 1) * kChunk);
      for (std::uint64_t trial = c * kChunk; trial < end; ++trial) {
        PhiloxStream rng(options.seed, trial);
        const ArrivalOrder order = ArrivalOrder::sample(n, rng);
        const OutcomeRecord out = playout(profile, n, k, tie, order, rng);
        std::fill(x.begin(), x.end(), 0.0);
        int first_topk = n + 1;
        for (int t = 1; t <= n; ++t) {
          if (order.rank_at(t) <= k) {
            first_topk = t;
            break;
          }
        }
        int topk_held = 0;
        for (std::size_t a = 0; a < K; ++a) {
          const int rank = out.global_rank[a];
          x[a * K + static_cast<std::size_t>(out.place[a] - 1)] = 1.0;
          if (rank == 1) x[top_at + a] = 1.0;
          if (rank <= k) ++topk_held;
          if (out.assigned_at[a] < first_topk) x[before_at] += 1.0;
          x[rank_at + static_cast<std::size_t>(rank - 1)] = 1.0;
        }
        x[forced_at] = out.forced ? 1.0 : 0.0;
        x[welfare_at] = out.welfare(values);
        x[unselected_at] = k - topk_held;
        m.add(x);
      }
    }
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Moments total(width);
  for (const Moments& m : partial) total.merge(m);

  SimulationReport report;
  report.n = n;
  report.k = k;
  report.tie = tie;
  report.trials = options.trials;
  report.seed = options.seed;
  report.places.resize(K);
  for (std::size_t a = 0; a < K; ++a) {
    for (std::size_t p = 0; p < K; ++p) {
      report.places[a].push_back(report_of(
          "agent " + std::to_string(a + 1) + " place " + std::to_string(p + 1), total, a * K + p, options));
    }
    report.top_award.push_back(report_of("agent " + std::to_string(a + 1) + " top award", total, top_at + a, options));
  }
  report.forced = report_of("forced assignment", total, forced_at, options);
  report.opt = values.opt(k);
  report.welfare = report_of("welfare", total, welfare_at, options);
  report.welfare_ratio =
      report_of("welfare / OPT", total, welfare_at, options, report.opt > 0 ? 1.0 / report.opt : 0.0);
  report.selected_before_topk = report_of("selected before first top-k arrival", total, before_at, options);
  report.unselected_topk = report_of("unselected top-k awards", total, unselected_at, options);
  for (std::size_t r = 0; r < Nn; ++r) {
    report.rank_selected.push_back(
        report_of("rank " + std::to_string(r + 1) + " selected", total, rank_at + r, options));
  }
  return report;
}

std::vector<std::vector<EstimateReport>> estimate_places(const Profile& profile, int n, int k, TieRule tie,
                                                         const McOptions& options) {
  return simulate(profile, n, k, tie, ValueProfile::top_k_ones(n, k), options).places;
}

WelfareEstimate estimate_welfare(const Profile& profile, const ValueProfile& values, int k, TieRule tie,
                                 const McOptions& options) {
  const SimulationReport r = simulate(profile, values.n(), k, tie, values, options);
  return {r.welfare, r.welfare_ratio, r.opt};
}

TopKStats topk_stats_of(const SimulationReport& report) {
  TopKStats s;
  s.selected_before_topk = report.selected_before_topk;
  s.unselected_topk = report.unselected_topk;
  s.rank_selected = report.rank_selected;
  s.selected_before_below_one = s.selected_before_topk.estimate + s.selected_before_topk.ci99 < 1.0;
  s.unselected_below_one = s.unselected_topk.estimate + s.unselected_topk.ci99 < 1.0;
  s.rank_monotone = true;
  for (std::size_t r = 1; r < s.rank_selected.size(); ++r) {
    const auto& hi = s.rank_selected[r - 1];
    const auto& lo = s.rank_selected[r];
    if (lo.estimate > hi.estimate + hi.ci99 + lo.ci99) s.rank_monotone = false;
  }
  return s;
}

TopKStats topk_selection_stats(const Profile& profile, int n, int k, TieRule tie, const McOptions& options) {
  return topk_stats_of(simulate(profile, n, k, tie, ValueProfile::top_k_ones(n, k), options));
}

double welfare_gap_constant(int n, int k) {
  if (k < 1 || k > n) throw InvalidParameters("need 1 <= k <= n");
  const int m = n / k + 1;
  if (m > n - k) return 0.0;
  // C(n-k, m) / C(n, m) as a running product
  double c = 1.0;
  for (int i = 0; i < m; ++i) c *= static_cast<double>(n - k - i) / (n - i);
  return c;
}

WelfareUpperReport welfare_upper_of(const SimulationReport& report) {
  WelfareUpperReport w;
  const int n = report.n;
  const int k = report.k;
  w.ratio = report.welfare_ratio;
  w.c = welfare_gap_constant(n, k);
  w.c_limit = std::pow((k - 1.0) / k, k);
  w.bound = 1.0 - w.c / k;
  w.within_bound = w.ratio.estimate <= w.bound + w.ratio.ci99;
  w.gap_positive = 1.0 - w.ratio.estimate > w.ratio.ci99;
  return w;
}

WelfareUpperReport welfare_upper_example(int n, int k, const McOptions& options) {
  if (k < 2) throw InvalidParameters("welfare_upper_example needs k > 1");
  Profile profile(static_cast<std::size_t>(k), std::make_shared<SigmaStrategy>());
  return welfare_upper_of(simulate(profile, n, k, TieRule::Random, ValueProfile::top_k_ones(n, k), options));
}

}  // namespace secretary
