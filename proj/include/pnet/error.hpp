#pragma once

#include <stdexcept>
#include <string>

namespace pnet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Explicit resource-budget overflow (state space, completion frontier,
// residue enumeration, DNF size, cycle count). Distinguishable from a
// negative verdict everywhere.
struct BudgetError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct MembershipError : Error {
  using Error::Error;
};

}  // namespace pnet
