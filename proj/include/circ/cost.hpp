#pragma once

#include <vector>

#include "circ/circuit.hpp"

namespace circ {

// Multiplication-centric cost measures. A node is "scalar-only" when it
// depends on neither parameters nor inputs; "parameter node" when it does not
// depend on inputs. The essential counters see only operations that combine
// input-dependent data, which is what separates evaluation work from
// parameter preparation.
struct CostReport {
  int essential_mults = 0;  // Mul with both arguments input-dependent
  int essential_divs = 0;   // Div with input-dependent divisor
  int nonscalar_size = 0;   // essential_mults + essential_divs

  // Mul with exactly one input-dependent argument whose other argument
  // involves parameters: where prepared parameters enter the computation.
  int param_mults = 0;

  // Mul/Div whose relevant arguments are merely non-scalar-only; counts the
  // parameter preparation too.
  int total_mults_nonscalar = 0;

  int node_count = 0;
  int depth_total = 0;      // every internal node counts one level
  int depth_nonscalar = 0;  // only essential Mul/Div nodes count

  int essential_param_count = 0;  // see essential_parameters below
};

CostReport cost(const Circuit& c);

// Parameter nodes that actually carry parameter data into the input-dependent
// part: they depend on some parameter leaf, not on inputs, and feed at least
// one input-dependent node directly. Purely scalar nodes never qualify, no
// matter where they feed. Returned in node order.
std::vector<int> essential_parameters(const Circuit& c);

}  // namespace circ
