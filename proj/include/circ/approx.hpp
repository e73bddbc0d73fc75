#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "circ/circuit.hpp"
#include "circ/domain.hpp"
#include "circ/laurent.hpp"
#include "circ/rng.hpp"
#include "circ/sparse_poly.hpp"

namespace circ {

// Evaluation of a circuit along a parameter curve u(eps) given as truncated
// Laurent series. The result at each output is a series whose coefficients
// are polynomials in the inputs; when every output is holomorphic at eps = 0
// the curve realizes its eps^0 coefficient as a limit of honest evaluations,
// even if the limit itself is attained at no single parameter point.

struct ApproxInstance {
  std::vector<ScalarSeries> germ;  // one series per parameter
  ParameterDomain domain = affine_domain(0);
  int prec = 16;
};

// Checks the instance invariants: germ arity matches the domain, every
// domain generator vanishes on the germ as far as precision shows, and the
// domain inequation does not. Throws PreconditionError otherwise.
void validate_instance(const ApproxInstance& inst);

struct ApproxResult {
  std::vector<PolySeries> outputs;
  bool holomorphic = false;          // every output has order >= 0
  std::vector<SparsePoly> limit;     // eps^0 coefficients, when holomorphic
  std::vector<PolySeries> tail;      // (output - limit) / eps, when holomorphic
};

// Node-wise series evaluation. Parameter nodes run in scalar-series
// arithmetic; input-dependent nodes carry polynomial coefficients, so every
// divisor must stay on the parameter side. Throws PrecisionExhausted when a
// division cannot be decided at the instance precision (raise prec),
// PreconditionError when a divisor depends on an input.
ApproxResult approx_eval(const Circuit& c, const ApproxInstance& inst);

struct RepresentsResult {
  bool holomorphic = false;
  std::vector<SparsePoly> limit;  // the represented polynomials
  long worst_order = 0;           // most negative output order when not
  int witness_output = -1;        // offending output slot
  int witness_node = -1;          // its node
};

RepresentsResult represents(const Circuit& c, const ApproxInstance& inst);

// Exact evaluations along eps_k = 2^-k. The germ is evaluated from its
// stored coefficient window, the circuit exactly at that parameter point;
// deviation is the largest coefficient distance to the represented limit
// (max of |re|, |im| bounds, as exact rationals).
struct WitnessRow {
  int k = 0;
  Scalar eps;
  bool evaluated = false;  // false: a divisor vanished at eps_k, row skipped
  std::vector<SparsePoly> value;
  mpq_class deviation;
};

struct WitnessTable {
  std::vector<WitnessRow> rows;
  mpq_class bound_constant;  // C with deviation(k) <= C * eps_k on all rows
};

// Requires represents(c, inst) to be holomorphic. Rows with failed
// evaluation are reported as skipped; if every row fails, throws.
WitnessTable convergence_witness(const Circuit& c, const ApproxInstance& inst,
                                 int k_max);

// Coefficient vectors of the (single) final result sampled over the
// parameter domain, kept as sparse polynomials in the inputs.
struct CoefficientCloud {
  int arity = 0;  // input arity of the sampled circuit
  std::uint64_t seed = 0;
  std::vector<SparsePoly> members;
};

CoefficientCloud sample_cloud(const Circuit& c, const ParameterDomain& d,
                              int count, Rng rng);

struct CloudDistance {
  mpq_class distance;  // max-norm over the union support
  int nearest = -1;    // index into members
  bool within_radius = false;
};

CloudDistance cloud_membership(const CoefficientCloud& cloud,
                               const SparsePoly& h, const mpq_class& radius);

}  // namespace circ
