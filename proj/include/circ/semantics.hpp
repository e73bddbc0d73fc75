#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circ/circuit.hpp"
#include "circ/domain.hpp"
#include "circ/rat_func.hpp"
#include "circ/rng.hpp"

namespace circ {

// ---------------------------------------------------------------------------
// Point evaluation

struct EvalResult {
  bool ok = true;
  int fail_node = -1;  // first division by zero, when !ok
  // Per-node values; a node downstream of a failed division has no value.
  std::vector<std::optional<Scalar>> values;
  std::vector<Scalar> outputs;  // filled when ok
};

EvalResult eval_point(const Circuit& c, const std::vector<Scalar>& u,
                      const std::vector<Scalar>& x);

// ---------------------------------------------------------------------------
// Symbolic expansion

struct ExpandOptions {
  std::size_t budget = 200000;  // max stored terms per intermediate value
};

struct ExpandResult {
  bool ok = true;
  int fail_node = -1;
  std::string fail_kind;  // "division_by_zero_function" or "budget_exceeded"
  std::vector<RatFunc> values;  // per node; prefix up to fail_node on failure
  std::vector<RatFunc> outputs;
  // Every intermediate value is a polynomial in the input block (coefficients
  // may still be fractions in the parameters).
  bool polynomial_in_inputs = true;
  // No divisor depends on an input: all division happens while preparing
  // parameter data. Implied by totally_division_free, which further requires
  // every divisor to be a plain scalar.
  bool essentially_division_free = true;
  bool totally_division_free = true;
};

// Expansion over the combined ring: variables U1..Ur then X1..Xn.
ExpandResult expand_symbolic(const Circuit& c, const ExpandOptions& opt = {});

// Parameters bound to exact scalars; variables are X1..Xn only.
ExpandResult expand_at_params(const Circuit& c, const std::vector<Scalar>& u,
                              const ExpandOptions& opt = {});

// Expansion with the parameters rewritten through the domain: identity for
// affine space, the defining polynomial map for images, the solved form for
// localized sets. Two nodes compute the same function on the domain exactly
// when their values here coincide. Returns nullopt when the constraint set is
// outside the solvable class; throws DomainSampleError(EmptyDomainSuspected)
// when the inequation of a localized set vanishes on its constraint set.
std::optional<ExpandResult> expand_over_domain(const Circuit& c,
                                               const ParameterDomain& d,
                                               const ExpandOptions& opt = {});

// ---------------------------------------------------------------------------
// Consistency: is every division defined on a dense subset of the domain?

enum class CheckMode { Exact, Probabilistic };
enum class Consistency { Consistent, Inconsistent, Undecided };

struct ConsistencyReport {
  Consistency verdict = Consistency::Consistent;
  int witness_node = -1;  // offending division when Inconsistent
  std::vector<int> undecided_nodes;
  std::string detail;
};

// Exact mode rewrites the parameters through the domain (identity for affine
// space, the polynomial map for images, the solved form for localized sets)
// and tests each divisor for identical vanishing. When the constraint set is
// outside the solvable class the check falls back to sampling; if sampling is
// impossible too, the verdict is Undecided. Throws DomainSampleError with
// EmptyDomainSuspected when the domain itself looks empty.
ConsistencyReport consistency_check(const Circuit& c, const ParameterDomain& d,
                                    CheckMode mode, int trials, Rng rng);

// ---------------------------------------------------------------------------
// Fingerprints: exact output values at seeded sample points

struct Fingerprint {
  std::uint64_t tag = 0;  // digest of the sampled coordinates
  int params = 0, inputs = 0;
  std::vector<std::vector<Scalar>> points;         // u followed by x
  std::vector<std::vector<Scalar>> output_values;  // one vector per point
};

// Evaluation failures at a sampled point trigger a bounded resample; if no
// evaluable point is found the call throws.
Fingerprint fingerprint(const Circuit& c, const ParameterDomain& d, Rng rng,
                        int k = 10, const SampleOptions& opt = {});

// Same sample points, and per point the same multiset of output values.
// (Transforms preserve results as a multiset, not by output position.)
bool equal_results(const Fingerprint& a, const Fingerprint& b);

// ---------------------------------------------------------------------------
// Shared internals (also used by transforms)

struct PointTrace {
  // status: 0 = value computed, 1 = zero divisor at this node, 2 = an
  // argument was already undefined.
  std::vector<std::optional<Scalar>> values;
  std::vector<signed char> status;
  int first_fail = -1;
};

PointTrace eval_trace(const Circuit& c, const std::vector<Scalar>& u,
                      const std::vector<Scalar>& x);

}  // namespace circ
