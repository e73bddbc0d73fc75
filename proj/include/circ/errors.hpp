#pragma once

#include <stdexcept>
#include <string>

namespace circ {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files or JSON that does not match the documented formats.
struct ParseError : Error {
  using Error::Error;
};

// A caller violated a documented precondition (wrong arity, invalid circuit,
// unsupported mode combination).
struct PreconditionError : Error {
  using Error::Error;
};

// Symbolic expansion grew past the caller-supplied term budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// A truncated series operation needed coefficients beyond the tracked window,
// e.g. division by a series indistinguishable from zero at current precision.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// Point sampling from a parameter domain failed: either the constraint set is
// outside the supported solvable class, or every attempt landed outside the
// localized region (which suggests the domain may be empty).
struct DomainSampleError : Error {
  enum class Kind { Unsupported, EmptyDomainSuspected };
  Kind kind;
  DomainSampleError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

// Joining two circuits produced a division that vanishes identically on the
// parameter domain, so the composite is undefined almost everywhere.
struct InconsistentJoin : Error {
  int node;  // offending division in the joined circuit
  InconsistentJoin(int node_, const std::string& msg) : Error(msg), node(node_) {}
};

// Request exceeded a configured size ceiling (see CIRC_CEILING_N).
struct CeilingExceeded : Error {
  using Error::Error;
};

}  // namespace circ
