#pragma once

#include <stdexcept>
#include <string>

namespace hetcache {

// Bad file / malformed JSON / unusable flags. CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scenario, placement or allocation violates a model invariant.
// CLI maps this to exit code 4.
struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric routine could not reach its accuracy target. Carries the
// tolerance that was actually achieved. CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
  double achieved_tolerance;
  NumericError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_tolerance(achieved) {}
};

}  // namespace hetcache
