#pragma once

#include <stdexcept>
#include <string>

namespace projconst {

// Eigensolver failed to reach its off-diagonal tolerance within the sweep cap.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Spectral gap at the requested cut is below tolerance; the objective is not
// differentiable there and callers must fall back to a subgradient step.
struct GapError : std::runtime_error {
  explicit GapError(const std::string& what) : std::runtime_error(what) {}
};

// Requested order exceeds a brute-force budget (stabilizer, census, canonical form).
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input; line is 1-based.
struct ParseError : std::runtime_error {
  ParseError(int line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

}  // namespace projconst
