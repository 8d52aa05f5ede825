#pragma once

#include <stdexcept>
#include <string>

namespace chen {

// Thrown on domain violations: bad dimensions, out-of-range indices,
// conflicting symmetric entries, malformed input documents. Numerical
// conditions (non-convergence, unboundedness) are reported through result
// flags instead, never as exceptions.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace chen
