#pragma once

#include <stdexcept>
#include <string>

namespace ramsplit {

/// Malformed or out-of-contract input (bad shapes, non-primes, unknown
/// simplices, unparsable payloads).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A search whose configured budget would be exceeded. Raised before any
/// partial answer is produced.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ramsplit
