#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dgame {

// Invalid user-supplied parameter: bad family size, unparsable graph
// expression, a partial coloring where a total one is required, and so on.
// The CLI maps this family to exit code 2.
class ParamError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A move that breaks the game rules (recoloring, color outside the palette).
class RuleError : public ParamError {
  using ParamError::ParamError;
};

// A strategy asked to run outside its stated preconditions.
class ApplicabilityError : public ParamError {
  using ParamError::ParamError;
};

// Search budget exhausted. Carries partial statistics; never a wrong answer.
// CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t nodes, double seconds)
      : std::runtime_error(what), nodes(nodes), seconds(seconds) {}

  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

// Broken internal invariant. A bug trap, not a user error.
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace dgame
