#pragma once

#include <stdexcept>
#include <string>

namespace antler {

// Precondition violations on operations ("domain error" in the interface
// contracts) are reported as std::invalid_argument.

// A computation was declined because it exceeds a configured cap
// (oracle size limits, exhaustive-backend limits, verification limits).
struct refusal_error : std::runtime_error {
  explicit refusal_error(const std::string& what) : std::runtime_error(what) {}
};

// Input text could not be parsed; carries a 1-based line number.
struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// A randomized construction exhausted its retry/trial budget.
struct budget_exhausted : std::runtime_error {
  explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// The solver grid was exhausted without finding a feedback vertex set.
struct grid_exhausted : std::runtime_error {
  explicit grid_exhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace antler
