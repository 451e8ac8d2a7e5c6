#pragma once

#include <stdexcept>
#include <string>

namespace flatstrata {

// A mathematical precondition or invariant failed (bad rank verdict,
// non-exact sequence, relator not satisfied, ...).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input could not be parsed or does not follow the documented schema.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace flatstrata
