#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "secretary/strategy.hpp"

namespace secretary {

namespace {

Action select_best(const Observation& obs) { return Action::select(obs.slot_at_rank(1)); }

Action select_max_available(const Observation& obs) {
  if (auto slot = obs.max_available_slot()) return Action::select(*slot);
  return Action::pass();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string_view to_string(TieRule tie) { return tie == TieRule::Random ? "random" : "ranked"; }

TieRule parse_tie_rule(std::string_view text) {
  if (text == "random") return TieRule::Random;
  if (text == "ranked") return TieRule::Ranked;
  throw ConfigError("unknown tie rule '" + std::string(text) + "' (expected random or ranked)");
}

Action Strategy::sample(const Observation& obs, RandomSource& rng) const {
  if (!randomized()) return act(obs);
  const auto choices = mixed_action(obs);
  constexpr std::uint64_t kScale = std::uint64_t{1} << 53;
  const double u = static_cast<double>(rng.uniform_below(kScale)) / static_cast<double>(kScale);
  double acc = 0.0;
  for (const auto& choice : choices) {
    acc += choice.probability;
    if (u < acc) return choice.action;
  }
  return choices.back().action;
}

std::string_view to_string(RankAction action) {
  switch (action) {
    case RankAction::Pass: return "pass";
    case RankAction::SelectBest: return "select_best";
    case RankAction::SelectSecond: return "select_second";
    case RankAction::SelectMaxAvailable: return "select_max_available";
  }
  return "pass";
}

RankAction parse_rank_action(std::string_view text) {
  if (text == "pass") return RankAction::Pass;
  if (text == "select_best") return RankAction::SelectBest;
  if (text == "select_second") return RankAction::SelectSecond;
  if (text == "select_max_available") return RankAction::SelectMaxAvailable;
  throw ConfigError("unknown action '" + std::string(text) + "'");
}

Action resolve(RankAction action, const Observation& obs) {
  switch (action) {
    case RankAction::Pass: return Action::pass();
    case RankAction::SelectBest:
      return obs.best_available() ? select_best(obs) : Action::pass();
    case RankAction::SelectSecond:
      return obs.second_best_available() ? Action::select(obs.slot_at_rank(2)) : Action::pass();
    case RankAction::SelectMaxAvailable: return select_max_available(obs);
  }
  return Action::pass();
}

// --- sigma -----------------------------------------------------------------

Action SigmaStrategy::act(const Observation& obs) const {
  const int n = obs.n, t = obs.t, l = obs.active_count;
  if (t >= n) return select_max_available(obs);
  if (!obs.best_available()) return Action::pass();
  // Integer cross-multiplication: n / l < t  <=>  n < t * l.
  if (n < t * l) return select_best(obs);
  if (l == 2 && 2 * t == n) return select_best(obs);
  return Action::pass();
}

std::string SigmaVariantStrategy::name() const {
  return std::string("sigma-variant:half=") + (flags_.select_at_half ? "select" : "pass") +
         ",alone=" + (flags_.select_when_alone ? "select" : "pass");
}

Action SigmaVariantStrategy::act(const Observation& obs) const {
  const int n = obs.n, t = obs.t, l = obs.active_count;
  if (t < n && obs.best_available()) {
    if (l == 2 && 2 * t == n && obs.second_best_available()) {
      return flags_.select_at_half ? select_best(obs) : Action::pass();
    }
    if (l == 1) return flags_.select_when_alone ? select_best(obs) : Action::pass();
  }
  return SigmaStrategy{}.act(obs);
}

SigmaVariantFlags parse_sigma_variant_flags(std::string_view text) {
  SigmaVariantFlags flags;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("malformed sigma-variant flag '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (value != "select" && value != "pass") {
      throw ConfigError("sigma-variant flag value must be select or pass, got '" + std::string(value) + "'");
    }
    const bool select = value == "select";
    if (key == "half") {
      flags.select_at_half = select;
    } else if (key == "alone") {
      flags.select_when_alone = select;
    } else {
      throw ConfigError("unknown sigma-variant flag '" + std::string(key) + "'");
    }
    pos = comma + 1;
  }
  return flags;
}

Action SigmaNonMaxStrategy::act(const Observation& obs) const {
  const Action base = SigmaStrategy{}.act(obs);
  if (obs.t < obs.n && !base.is_pass() && obs.second_best_available()) {
    return Action::select(obs.slot_at_rank(2));
  }
  return base;
}

// --- thresholds --------------------------------------------------------------

ThresholdProfile::ThresholdProfile(int n_, int k_, int fill) : n(n_), k(k_) {
  for (int l = 1; l <= k; ++l) table.emplace_back(static_cast<std::size_t>(l), fill);
}

bool ThresholdProfile::is_monotone() const {
  for (int l = 1; l <= k; ++l) {
    for (int j = 2; j <= l; ++j) {
      if (at(j, l) > at(j - 1, l)) return false;
    }
  }
  return true;
}

std::string threshold_profile_to_json(const ThresholdProfile& profile) {
  nlohmann::json doc;
  doc["n"] = profile.n;
  doc["k"] = profile.k;
  doc["T"] = profile.table;
  return doc.dump();
}

ThresholdProfile threshold_profile_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("threshold profile: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("T") || !doc["T"].is_array()) {
    throw ConfigError("threshold profile: expected an object with a nested array field T");
  }
  ThresholdProfile profile;
  profile.k = static_cast<int>(doc["T"].size());
  profile.n = doc.value("n", 0);
  for (std::size_t l = 0; l < doc["T"].size(); ++l) {
    const auto& row = doc["T"][l];
    if (!row.is_array() || row.size() != l + 1) {
      throw ConfigError("threshold profile: row " + std::to_string(l + 1) + " must hold " +
                        std::to_string(l + 1) + " thresholds");
    }
    profile.table.push_back(row.get<std::vector<int>>());
  }
  return profile;
}

ThresholdProfile load_threshold_profile(const std::string& path) {
  return threshold_profile_from_json(read_file(path));
}

ThresholdStrategy::ThresholdStrategy(ThresholdProfile profile, bool select_at_threshold)
    : profile_(std::move(profile)), select_at_threshold_(select_at_threshold) {}

Action ThresholdStrategy::act(const Observation& obs) const {
  const int t = obs.t, l = obs.active_count, j = obs.my_rank;
  if (l > profile_.k) {
    throw InvalidParameters("threshold profile covers " + std::to_string(profile_.k) +
                            " agents, game has " + std::to_string(l) + " active");
  }
  if (obs.is_lowest_active() && t > obs.n - l) return select_max_available(obs);
  const int threshold = profile_.at(j, l);
  const bool due = select_at_threshold_ ? t >= threshold : t > threshold;
  if (due && obs.best_available()) return select_best(obs);
  return Action::pass();
}

// --- baselines ---------------------------------------------------------------

int classical_cutoff(int n) {
  if (n < 1) throw InvalidParameters("classical_cutoff: n must be positive");
  int r = n;
  double tail = 0.0;
  while (r > 1 && tail + 1.0 / (r - 1) <= 1.0) {
    tail += 1.0 / (r - 1);
    --r;
  }
  return r;
}

ClassicalStrategy::ClassicalStrategy(int n) : cached_n_(n), cached_cutoff_(classical_cutoff(n)) {}

Action ClassicalStrategy::act(const Observation& obs) const {
  const int n = obs.n, t = obs.t;
  if (t > n) return select_max_available(obs);
  const Action newest = Action::select(obs.slot_at_rank(obs.newest_rank));
  if (t == n) return newest;
  const int cutoff = n == cached_n_ ? cached_cutoff_ : classical_cutoff(n);
  if (t >= cutoff && obs.newest_is_best()) return newest;
  return Action::pass();
}

Action GrabFirstStrategy::act(const Observation& obs) const { return select_max_available(obs); }

MixedStrategy::MixedStrategy(StrategyPtr first, StrategyPtr second, double weight)
    : first_(std::move(first)), second_(std::move(second)), weight_(weight) {
  if (!(weight_ >= 0.0 && weight_ <= 1.0)) throw InvalidParameters("mixing weight must lie in [0, 1]");
}

std::string MixedStrategy::name() const {
  std::ostringstream out;
  out << "mix(" << first_->name() << "," << second_->name() << "," << weight_ << ")";
  return out.str();
}

std::vector<WeightedAction> MixedStrategy::mixed_action(const Observation& obs) const {
  const Action a = first_->act(obs);
  const Action b = second_->act(obs);
  if (a == b) return {{a, 1.0}};
  return {{a, weight_}, {b, 1.0 - weight_}};
}

// --- tables ------------------------------------------------------------------

std::string observation_key(const Observation& obs) {
  std::string key;
  key.reserve(static_cast<std::size_t>(obs.revealed()) + 4);
  key.push_back(static_cast<char>(obs.t & 0xff));
  key.push_back(static_cast<char>((obs.t >> 8) & 0xff));
  key.push_back(static_cast<char>(obs.newest_rank & 0xff));
  key.push_back(static_cast<char>((obs.newest_rank >> 8) & 0xff));
  for (int r = 1; r <= obs.revealed(); ++r) key.push_back(static_cast<char>(obs.holder_at_rank(r) + 1));
  return key;
}

TableStrategy::TableStrategy(std::string label, std::map<std::string, int> table)
    : label_(std::move(label)), table_(std::move(table)) {}

Action TableStrategy::act(const Observation& obs) const {
  const auto it = table_.find(observation_key(obs));
  if (it == table_.end() || it->second <= 0 || it->second > obs.revealed()) return Action::pass();
  const int slot = obs.slot_at_rank(it->second);
  return obs.available(slot) ? Action::select(slot) : Action::pass();
}

}  // namespace secretary
