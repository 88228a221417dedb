#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "secretary/engine.hpp"
#include "secretary/exact.hpp"
#include "secretary/lemma1.hpp"
#include "secretary/montecarlo.hpp"
#include "secretary/ranked.hpp"
#include "secretary/stopping.hpp"

namespace secretary::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kOutDirEnv = "SECRETARY_OUT_DIR";

// Reports carry 12 significant digits.
double r12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(r12(x));
  return a;
}

json estimate(const EstimateReport& r) {
  return {{"quantity", r.quantity}, {"estimate", r12(r.estimate)}, {"stderr", r12(r.std_error)},
          {"ci99", r12(r.ci99)},     {"trials", r.trials},           {"seed", r.seed}};
}

struct Options {
  int n = 0;
  int k = 1;
  std::string tie = "random";
  std::string profile = "sigma";
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string values = "top-k-ones";
  std::string out;
  std::string csv;
  int max_n = ExactLimits{}.max_n;
  std::size_t max_states = ExactLimits{}.max_states;
  int best_response_agent = 0;
  int guarantee_agent = 0;
};

std::vector<std::string> split_profile(const std::string& spec) {
  std::vector<std::string> items;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    // "half=pass,alone=select" continues a sigma-variant entry
    const bool continuation = !items.empty() && item.find('=') != std::string::npos &&
                              item.find(':') == std::string::npos;
    if (continuation) {
      items.back() += "," + item;
    } else {
      items.push_back(item);
    }
  }
  return items;
}

StrategyPtr make_strategy(const std::string& name, int n, int k, TieRule tie) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "sigma") return std::make_shared<SigmaStrategy>();
  if (head == "sigma-variant") return std::make_shared<SigmaVariantStrategy>(parse_sigma_variant_flags(arg));
  if (head == "sigma-nonmax") return std::make_shared<SigmaNonMaxStrategy>();
  if (head == "classical") return std::make_shared<ClassicalStrategy>(n);
  if (head == "grab-first") return std::make_shared<GrabFirstStrategy>();
  if (head == "always-pass") return std::make_shared<AlwaysPassStrategy>();
  if (head == "threshold") {
    ThresholdProfile profile = load_threshold_profile(arg);
    if (profile.n != n || profile.k < k) {
      throw ConfigError("threshold file " + arg + " is for n=" + std::to_string(profile.n) +
                        " k=" + std::to_string(profile.k));
    }
    return std::make_shared<ThresholdStrategy>(std::move(profile));
  }
  if (head == "scripted") return std::make_shared<ScriptedStrategy>(load_scripted_strategy(arg));
  if (head == "equilibrium") {
    if (tie == TieRule::Random) return std::make_shared<SigmaStrategy>();
    return std::make_shared<ThresholdStrategy>(ranked_equilibrium_thresholds(n, k).thresholds);
  }
  if (head == "mixed") {
    // mixed:<weight>:<first>:<second>
    const auto second_colon = arg.find(':');
    const auto third_colon = second_colon == std::string::npos ? std::string::npos : arg.find(':', second_colon + 1);
    if (third_colon == std::string::npos) throw ConfigError("mixed strategy needs mixed:<weight>:<first>:<second>");
    double weight = 0.0;
    try {
      weight = std::stod(arg.substr(0, second_colon));
    } catch (const std::exception&) {
      throw ConfigError("mixed strategy weight is not a number");
    }
    return std::make_shared<MixedStrategy>(
        make_strategy(arg.substr(second_colon + 1, third_colon - second_colon - 1), n, k, tie),
        make_strategy(arg.substr(third_colon + 1), n, k, tie), weight);
  }
  throw ConfigError("unknown strategy '" + name + "'");
}

ValueProfile parse_values(const std::string& spec, int n, int k) {
  if (spec == "top-k-ones") return ValueProfile::top_k_ones(n, k);
  std::vector<double> y;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      y.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("value list entry '" + item + "' is not a number");
    }
  }
  if (static_cast<int>(y.size()) != n) throw ConfigError("value list must have n entries");
  return ValueProfile(std::move(y));
}

json config_json(const std::string& command, const Options& o, bool game, bool mc) {
  json c;
  c["subcommand"] = command;
  c["n"] = o.n;
  if (game) {
    c["k"] = o.k;
    c["tie"] = o.tie;
    json profile = json::array();
    for (const auto& s : split_profile(o.profile)) profile.push_back(s);
    c["profile"] = profile;
  }
  if (mc) {
    c["trials"] = o.trials;
    c["seed"] = o.seed;
    c["threads"] = o.threads;
    c["values"] = o.values;
  }
  if (!o.out.empty()) c["out"] = o.out;
  if (!o.csv.empty()) c["csv"] = o.csv;
  return c;
}

std::filesystem::path resolve_output(const std::string& requested, const std::string& fallback_name) {
  const char* dir = std::getenv(kOutDirEnv);
  if (!requested.empty()) {
    std::filesystem::path p(requested);
    if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
    return p;
  }
  if (dir && *dir) return std::filesystem::path(dir) / fallback_name;
  return {};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

void emit(const json& report, const Options& o, const std::string& name, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  const auto path = resolve_output(o.out, name + ".json");
  if (!path.empty()) write_file(path, text);
}

void emit_csv(const std::string& text, const Options& o) {
  if (o.csv.empty()) return;
  write_file(resolve_output(o.csv, o.csv), text);
}

ExactLimits limits_of(const Options& o) { return ExactLimits{o.max_n, o.max_states}; }

int cmd_simulate(const Options& o, std::ostream& out) {
  const TieRule tie = parse_tie_rule(o.tie);
  const Profile profile = parse_profile(o.profile, o.n, o.k, tie);
  const ValueProfile values = parse_values(o.values, o.n, o.k);
  const McOptions mc{o.trials, o.seed, o.threads};
  const SimulationReport r = simulate(profile, o.n, o.k, tie, values, mc);

  json report;
  report["config"] = config_json("simulate", o, true, true);
  json places = json::array();
  std::ostringstream csv;
  csv << "agent,place,estimate,stderr,ci99\n";
  for (std::size_t a = 0; a < r.places.size(); ++a) {
    json row = json::array();
    for (std::size_t p = 0; p < r.places[a].size(); ++p) {
      const auto& e = r.places[a][p];
      row.push_back(estimate(e));
      csv << a + 1 << "," << p + 1 << "," << r12(e.estimate) << "," << r12(e.std_error) << "," << r12(e.ci99) << "\n";
    }
    places.push_back(row);
  }
  report["places"] = places;
  json top = json::array();
  for (const auto& e : r.top_award) top.push_back(estimate(e));
  report["top_award"] = top;
  report["forced_assignment"] = estimate(r.forced);
  report["welfare"] = {{"opt", r12(r.opt)}, {"welfare", estimate(r.welfare)}, {"ratio", estimate(r.welfare_ratio)}};
  const TopKStats s = topk_stats_of(r);
  json ranks = json::array();
  for (const auto& e : s.rank_selected) ranks.push_back(estimate(e));
  report["topk"] = {{"selected_before_first_topk", estimate(s.selected_before_topk)},
                    {"unselected_topk", estimate(s.unselected_topk)},
                    {"selected_before_below_one", s.selected_before_below_one},
                    {"unselected_below_one", s.unselected_below_one},
                    {"rank_selection_monotone", s.rank_monotone},
                    {"rank_selected", ranks}};
  if (o.values == "top-k-ones" && o.k > 1) {
    const WelfareUpperReport w = welfare_upper_of(r);
    report["welfare_upper"] = {{"c", r12(w.c)},
                               {"c_limit", r12(w.c_limit)},
                               {"bound", r12(w.bound)},
                               {"within_bound", w.within_bound},
                               {"gap_positive", w.gap_positive}};
  }
  emit(report, o, "simulate", out);
  emit_csv(csv.str(), o);
  return kOk;
}

int cmd_exact(const Options& o, std::ostream& out) {
  const TieRule tie = parse_tie_rule(o.tie);
  const Profile profile = parse_profile(o.profile, o.n, o.k, tie);
  const ExactLimits limits = limits_of(o);
  const OutcomeDistribution d = outcome_distribution(profile, o.n, o.k, tie, limits);
  json report;
  report["config"] = config_json("solve exact", o, true, false);
  json places = json::array();
  std::ostringstream csv;
  csv << "agent,place,probability\n";
  for (std::size_t a = 0; a < d.places.size(); ++a) {
    places.push_back(vec(d.places[a]));
    for (std::size_t p = 0; p < d.places[a].size(); ++p) csv << a + 1 << "," << p + 1 << "," << r12(d.places[a][p]) << "\n";
  }
  report["places"] = places;
  report["top_award"] = vec(d.top_award);
  report["states"] = d.states;
  if (o.best_response_agent > 0) {
    const BestResponse br = best_response(o.best_response_agent - 1, profile, o.n, o.k, tie, limits);
    report["best_response"] = {{"agent", o.best_response_agent}, {"value", vec(br.value)},
                               {"top_award", r12(br.top_award)}, {"policy_entries", br.policy->size()}};
  }
  if (o.guarantee_agent > 0) {
    const AgentId i = o.guarantee_agent - 1;
    const GuaranteeReport g = guarantee_value(i, profile[static_cast<std::size_t>(i)], o.n, o.k, tie, limits);
    report["guarantee"] = {{"agent", o.guarantee_agent}, {"strategy", g.strategy}, {"value", vec(g.value)}};
  }
  emit(report, o, "solve-exact", out);
  emit_csv(csv.str(), o);
  return kOk;
}

json threshold_table(const ThresholdProfile& p) {
  json t = json::array();
  for (const auto& row : p.table) t.push_back(row);
  return t;
}

int cmd_thresholds(const Options& o, std::ostream& out) {
  const RankedEquilibrium eq = ranked_equilibrium_thresholds(o.n, o.k);
  const ImmediateThresholds im = immediate_thresholds(o.n, o.k);
  json report;
  report["config"] = config_json("solve thresholds", o, false, false);
  report["config"]["k"] = o.k;
  report["T"] = threshold_table(eq.thresholds);
  int first = o.n;
  for (int j = 1; j <= o.k; ++j) first = std::min(first, eq.thresholds.at(j, o.k));
  report["first_selection_threshold"] = first;
  report["first_selection_fraction"] = r12(static_cast<double>(first) / o.n);
  report["first_place"] = vec(eq.first_place);
  report["converged"] = eq.converged;
  report["sweeps"] = eq.sweeps;
  report["threshold_gap_ok"] = eq.threshold_gap_ok;
  report["probability_gap_ok"] = eq.probability_gap_ok;
  report["warnings"] = eq.warnings;
  if (!eq.converged) {
    json cycle = json::array();
    for (const auto& p : eq.cycle) cycle.push_back(threshold_table(p));
    report["cycle"] = cycle;
  }
  report["immediate"] = {{"T", im.T},          {"q", vec(im.q)},
                         {"tau", r12(im.tau)}, {"sum_gap", r12(im.sum_gap)},
                         {"monotone", im.monotone}, {"sandwich", im.sandwich}};
  std::ostringstream csv;
  csv << "active,rank,threshold\n";
  for (int l = 1; l <= o.k; ++l) {
    for (int j = 1; j <= l; ++j) csv << l << "," << j << "," << eq.thresholds.at(j, l) << "\n";
  }
  emit(report, o, "solve-thresholds", out);
  emit_csv(csv.str(), o);
  return eq.converged ? kOk : kVerificationFailed;
}

int cmd_tau(const Options& o, std::ostream& out) {
  json report;
  report["config"] = config_json("solve tau", o, false, false);
  report["config"]["k"] = o.k;
  std::vector<double> taus;
  for (int m = 1; m <= o.k; ++m) taus.push_back(tau_k(o.n, m));
  bool monotone = true;
  for (std::size_t i = 1; i < taus.size(); ++i) monotone = monotone && taus[i] >= taus[i - 1];
  report["tau"] = r12(taus.back());
  report["tau_by_k"] = vec(taus);
  report["monotone"] = monotone;
  emit(report, o, "solve-tau", out);
  return kOk;
}

json pair_json(const PlacePair& p) { return json::array({r12(p.first), r12(p.second)}); }

int cmd_lemma1(const Options& o, std::ostream& out) {
  const Lemma1Report r = check_lemma1(o.n, o.k, limits_of(o));
  json report;
  report["config"] = config_json("solve lemma1", o, false, false);
  report["config"]["k"] = o.k;
  json rows = json::array();
  std::ostringstream csv;
  csv << "t,active,class,reach,first,second,bound_first,bound_second,slack\n";
  for (const auto& row : r.rows) {
    rows.push_back({{"t", row.t},
                    {"active", row.l},
                    {"class", std::string(1, row.state_class)},
                    {"reach", r12(row.reach)},
                    {"exact", pair_json(row.exact)},
                    {"worst_state", pair_json(row.worst)},
                    {"bound", pair_json(row.bound)},
                    {"slack", r12(row.slack)}});
    csv << row.t << "," << row.l << "," << row.state_class << "," << r12(row.reach) << "," << r12(row.exact.first)
        << "," << r12(row.exact.second) << "," << r12(row.bound.first) << "," << r12(row.bound.second) << ","
        << r12(row.slack) << "\n";
  }
  report["violations"] = r.violations;
  report["state_violations"] = r.state_violations;
  report["min_slack"] = r12(r.min_slack);
  report["rows"] = rows;
  emit(report, o, "solve-lemma1", out);
  emit_csv(csv.str(), o);
  return r.violations == 0 ? kOk : kVerificationFailed;
}

int cmd_three_agent(const Options& o, std::ostream& out) {
  const ThreeAgentPrediction p = three_agent_prediction(o.n);
  const ThreeAgentPrediction lim = three_agent_limit();
  json report;
  report["config"] = config_json("solve three-agent", o, false, false);
  report["tau"] = r12(p.tau);
  report["tau_over_n"] = r12(p.tau / o.n);
  report["p1"] = r12(p.p1);
  report["p2"] = r12(p.p2);
  report["p3"] = r12(p.p3);
  report["limit"] = {{"tau_over_n", r12(lim.tau)}, {"p1", r12(lim.p1)}, {"p2", r12(lim.p2)}, {"p3", r12(lim.p3)}};
  emit(report, o, "solve-three-agent", out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const TieRule tie = parse_tie_rule(o.tie);
  const ExactLimits limits = limits_of(o);
  if (o.n > limits.max_n) {
    throw SizeLimitError("exact.max_n", static_cast<std::size_t>(limits.max_n), static_cast<std::size_t>(o.n));
  }
  const Profile profile = parse_profile(o.profile, o.n, o.k, tie);
  const SpeVerdict v = verify_spe(profile, o.n, o.k, tie, limits);
  json report;
  report["config"] = config_json("verify-spe", o, true, false);
  report["equilibrium"] = v.equilibrium;
  report["subgames"] = v.subgames;
  if (v.witness) {
    const SpeWitness& w = *v.witness;
    report["witness"] = {{"t", w.t},
                         {"state", w.state},
                         {"agent", w.agent + 1},
                         {"deviation", w.deviation},
                         {"old_value", vec(w.old_value)},
                         {"new_value", vec(w.new_value)}};
  }
  emit(report, o, "verify-spe", out);
  return v.equilibrium ? kOk : kVerificationFailed;
}

}  // namespace

Profile parse_profile(const std::string& spec, int n, int k, TieRule tie) {
  const auto names = split_profile(spec);
  if (names.empty()) throw ConfigError("empty profile");
  if (names.size() != 1 && static_cast<int>(names.size()) != k) {
    throw ConfigError("profile lists " + std::to_string(names.size()) + " strategies for " + std::to_string(k) +
                      " agents");
  }
  Profile profile;
  if (names.size() == 1) {
    const StrategyPtr s = make_strategy(names.front(), n, k, tie);
    profile.assign(static_cast<std::size_t>(k), s);
  } else {
    for (const auto& name : names) profile.push_back(make_strategy(name, n, k, tie));
  }
  return profile;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Competing secretaries: simulation, exact solvers and equilibrium checks"};
  app.require_subcommand(1);
  Options o;

  auto add_game = [&](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "number of awards")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--k", o.k, "number of agents")->check(CLI::PositiveNumber);
    cmd->add_option("--tie", o.tie, "tie rule: random or ranked")->check(CLI::IsMember({"random", "ranked"}));
    cmd->add_option("--profile", o.profile, "strategy per agent (comma-separated) or one for all");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "JSON report path (relative to $" + std::string(kOutDirEnv) + " if set)");
    cmd->add_option("--csv", o.csv, "optional CSV export path");
  };
  auto add_limits = [&](CLI::App* cmd) {
    cmd->add_option("--max-n", o.max_n, "largest n for unrestricted exact solving");
    cmd->add_option("--max-states", o.max_states, "state budget of the exact solvers");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of places, welfare and top-k statistics");
  add_game(simulate);
  add_output(simulate);
  simulate->add_option("--trials", o.trials, "number of playouts")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed, "random seed");
  simulate->add_option("--threads", o.threads, "worker threads (does not change results)")->check(CLI::PositiveNumber);
  simulate->add_option("--values", o.values, "award values, best first, or top-k-ones");

  CLI::App* solve = app.add_subcommand("solve", "Exact solvers");
  solve->require_subcommand(1);
  CLI::App* exact = solve->add_subcommand("exact", "Exact place vectors of a profile");
  add_game(exact);
  add_output(exact);
  add_limits(exact);
  exact->add_option("--best-response", o.best_response_agent, "also report the best response of this agent (1-based)");
  exact->add_option("--guarantee", o.guarantee_agent, "also report the worst case of this agent's strategy (1-based)");
  CLI::App* thresholds = solve->add_subcommand("thresholds", "Ranked-tie equilibrium thresholds");
  thresholds->add_option("--n", o.n, "number of awards")->required()->check(CLI::PositiveNumber);
  thresholds->add_option("--k", o.k, "number of agents")->check(CLI::PositiveNumber);
  add_output(thresholds);
  CLI::App* tau = solve->add_subcommand("tau", "Best single-chooser probability with k picks");
  tau->add_option("--n", o.n, "number of awards")->required()->check(CLI::PositiveNumber);
  tau->add_option("--k", o.k, "number of picks")->check(CLI::PositiveNumber);
  add_output(tau);
  CLI::App* lemma1 = solve->add_subcommand("lemma1", "Conditional place probabilities of sigma against the bounds");
  lemma1->add_option("--n", o.n, "number of awards")->required()->check(CLI::PositiveNumber);
  lemma1->add_option("--k", o.k, "number of agents")->check(CLI::PositiveNumber);
  add_output(lemma1);
  add_limits(lemma1);
  CLI::App* three = solve->add_subcommand("three-agent", "Closed-form three-agent predictions");
  three->add_option("--n", o.n, "number of awards")->required()->check(CLI::PositiveNumber);
  add_output(three);

  CLI::App* verify = app.add_subcommand("verify-spe", "Check a profile for profitable deviations in every subgame");
  add_game(verify);
  add_output(verify);
  add_limits(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (o.k > o.n && !three->parsed()) throw ConfigError("need k <= n");
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (exact->parsed()) return cmd_exact(o, out);
    if (thresholds->parsed()) return cmd_thresholds(o, out);
    if (tau->parsed()) return cmd_tau(o, out);
    if (lemma1->parsed()) return cmd_lemma1(o, out);
    if (three->parsed()) return cmd_three_agent(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"secretary"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace secretary::cli
