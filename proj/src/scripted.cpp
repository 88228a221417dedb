#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "secretary/strategy.hpp"

namespace secretary {

namespace {

template <typename T>
bool optional_equal_or_unset(const std::optional<T>& a, const std::optional<T>& b) {
  return !a || !b || *a == *b;
}

std::optional<int> read_int(const nlohmann::json& record, const char* field, std::size_t index) {
  if (!record.contains(field) || record[field].is_null()) return std::nullopt;
  if (!record[field].is_number_integer()) {
    throw ConfigError("scripted record " + std::to_string(index) + ": field " + field + " must be an integer");
  }
  return record[field].get<int>();
}

std::optional<bool> read_bool(const nlohmann::json& record, const char* field, std::size_t index) {
  if (!record.contains(field) || record[field].is_null()) return std::nullopt;
  if (!record[field].is_boolean()) {
    throw ConfigError("scripted record " + std::to_string(index) + ": field " + field + " must be a boolean");
  }
  return record[field].get<bool>();
}

}  // namespace

bool ScriptPattern::matches(const Observation& obs) const {
  if (t_min && obs.t < *t_min) return false;
  if (t_max && obs.t > *t_max) return false;
  if (active_count && obs.active_count != *active_count) return false;
  if (my_rank && obs.my_rank != *my_rank) return false;
  if (best_available && obs.best_available() != *best_available) return false;
  if (second_best_available && obs.second_best_available() != *second_best_available) return false;
  return true;
}

bool ScriptPattern::overlaps(const ScriptPattern& other) const {
  const int lo = std::max(t_min.value_or(std::numeric_limits<int>::min()),
                          other.t_min.value_or(std::numeric_limits<int>::min()));
  const int hi = std::min(t_max.value_or(std::numeric_limits<int>::max()),
                          other.t_max.value_or(std::numeric_limits<int>::max()));
  return lo <= hi && optional_equal_or_unset(active_count, other.active_count) &&
         optional_equal_or_unset(my_rank, other.my_rank) &&
         optional_equal_or_unset(best_available, other.best_available) &&
         optional_equal_or_unset(second_best_available, other.second_best_available);
}

ScriptedStrategy::ScriptedStrategy(std::vector<ScriptPattern> table, std::string label)
    : table_(std::move(table)), label_(std::move(label)) {
  for (std::size_t i = 0; i < table_.size(); ++i) {
    for (std::size_t j = i + 1; j < table_.size(); ++j) {
      if (table_[i].overlaps(table_[j]) && table_[i].action != table_[j].action) {
        warnings_.push_back("records " + std::to_string(i) + " and " + std::to_string(j) +
                            " overlap; record " + std::to_string(i) + " wins");
      }
    }
  }
}

Action ScriptedStrategy::act(const Observation& obs) const {
  for (const auto& row : table_) {
    if (row.matches(obs)) return resolve(row.action, obs);
  }
  return Action::pass();
}

ScriptedStrategy scripted_strategy_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scripted strategy: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("scripted strategy: expected a JSON list of records");
  std::vector<ScriptPattern> rows;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& record = doc[i];
    if (!record.is_object()) throw ConfigError("scripted record " + std::to_string(i) + " is not an object");
    if (!record.contains("action") || !record["action"].is_string()) {
      throw ConfigError("scripted record " + std::to_string(i) + ": missing string field action");
    }
    ScriptPattern row;
    row.t_min = read_int(record, "t_min", i);
    row.t_max = read_int(record, "t_max", i);
    row.active_count = read_int(record, "active_count", i);
    row.my_rank = read_int(record, "my_rank", i);
    row.best_available = read_bool(record, "best_available", i);
    row.second_best_available = read_bool(record, "second_best_available", i);
    row.action = parse_rank_action(record["action"].get<std::string>());
    if (row.t_min && row.t_max && *row.t_min > *row.t_max) {
      throw ConfigError("scripted record " + std::to_string(i) + ": t_min > t_max");
    }
    if (row.my_rank && row.active_count && *row.my_rank > *row.active_count) {
      throw ConfigError("scripted record " + std::to_string(i) + ": my_rank exceeds active_count");
    }
    rows.push_back(row);
  }
  return ScriptedStrategy(std::move(rows));
}

ScriptedStrategy load_scripted_strategy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scripted_strategy_from_json(buffer.str());
}

}  // namespace secretary
