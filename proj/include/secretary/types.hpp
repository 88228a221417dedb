#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace secretary {

/// Agents are indexed from 0; agent 0 is the highest ranked under ranked
/// tie-breaking. User-facing output renders them 1-based.
using AgentId = int;

enum class TieRule { Random, Ranked };

std::string_view to_string(TieRule tie);
TieRule parse_tie_rule(std::string_view text);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class InvalidAction : public Error {
 public:
  InvalidAction(AgentId agent, const std::string& what)
      : Error("agent " + std::to_string(agent + 1) + ": " + what), agent_(agent) {}
  AgentId agent() const { return agent_; }

 private:
  AgentId agent_;
};

class IncompleteGame : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised when an exact computation would exceed a configured bound.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& bound_name, std::size_t bound, std::size_t requested)
      : Error("size limit exceeded: " + bound_name + " = " + std::to_string(requested) +
              " > " + std::to_string(bound)),
        bound_name_(bound_name),
        bound_(bound) {}
  const std::string& bound_name() const { return bound_name_; }
  std::size_t bound() const { return bound_; }

 private:
  std::string bound_name_;
  std::size_t bound_;
};

}  // namespace secretary
