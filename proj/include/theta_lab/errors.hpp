#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace theta_lab {

struct degenerate_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a point set violates general position. `indices` names the
// offending points in input order.
struct general_position_error : std::invalid_argument {
  std::vector<std::size_t> indices;

  general_position_error(const std::string& what, std::vector<std::size_t> offending)
      : std::invalid_argument(what), indices(std::move(offending)) {}
};

// Parse failure in a point-set file. `line` is 1-based, 0 when not line related.
struct parse_error : std::runtime_error {
  std::size_t line = 0;

  parse_error(const std::string& what, std::size_t at_line)
      : std::runtime_error(what), line(at_line) {}
};

// The inductive construction hit a configuration where no recorded inequality
// holds or the recursion did not shrink. Never swallowed.
struct counterexample_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace theta_lab
