#ifndef RSO_ERROR_HPP
#define RSO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rso {

// Input violates a documented precondition (bad sizes, ineligible graphs,
// out-of-range vertices). The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed serialized input. The message names the line and field.
struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};

// A randomized search ran out of its candidate budget.
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A local algorithm was handed a graph that is not a relabeled copy of the
// graph it expects.
struct Rejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rso

#endif
