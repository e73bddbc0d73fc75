#pragma once

#include <utility>
#include <vector>

#include "circ/circuit.hpp"
#include "circ/domain.hpp"
#include "circ/rng.hpp"
#include "circ/semantics.hpp"

namespace circ {

// ---------------------------------------------------------------------------
// join: feed the outputs of f into the inputs of g

struct JoinSpec {
  // wiring[k] = (output slot of f, input index of g), both 0-based, forming a
  // bijection between f's output slots and g's inputs. Empty means identity
  // (slot i drives input i+1).
  std::vector<std::pair<int, int>> wiring;
};

// Both circuits must share the parameter arity. The result keeps f's nodes,
// appends g's non-input nodes with g's input leaves rewired to f's outputs,
// and takes g's outputs. A consistency check runs on the composite; an
// Inconsistent verdict throws InconsistentJoin (a division that was fine in g
// alone can become identically zero once fed from f).
Circuit join(const Circuit& f, const Circuit& g, const JoinSpec& spec,
             const ParameterDomain& d, CheckMode mode, int trials, Rng rng);

// ---------------------------------------------------------------------------
// reduce: merge nodes that compute the same function

struct ReduceOptions {
  bool exact = false;  // confirm semantic merges by symbolic expansion
  int points = 10;     // sample points for the semantic grouping
  int max_rounds = 16;
};

struct ReduceResult {
  Circuit circuit;
  int merged_structural = 0;
  int merged_semantic = 0;
  int rounds = 0;
  // The semantic pass needs sample points where the whole circuit evaluates;
  // if none are found (after bounded retries) only structural merging ran.
  bool semantic_pass_ran = true;
};

// Deterministic for a fixed seed: candidates group by exact values at shared
// sample points, the smallest node id of each group becomes the
// representative, and rounds repeat to a fixpoint. Dead nodes left behind by
// merging are collected at the end of every round.
ReduceResult reduce(const Circuit& c, const ParameterDomain& d, Rng rng,
                    const ReduceOptions& opt = {});

// ---------------------------------------------------------------------------
// garbage_collect: drop nodes unreachable from the outputs

struct GcResult {
  Circuit circuit;
  int removed = 0;
};

GcResult garbage_collect(const Circuit& c);

// ---------------------------------------------------------------------------
// broadcast: graft copies of g onto chosen host nodes

struct BroadcastResult {
  Circuit circuit;
  std::vector<int> grafted_outputs;  // positions of g's outputs in `circuit`
};

// sites[i] is the host node standing in for g's input i+1. The host's output
// list is left untouched, so the grafted nodes are reported as dangling by
// validate until the caller marks outputs or garbage-collects.
BroadcastResult broadcast(const Circuit& host, const Circuit& g,
                          const std::vector<int>& sites);

// ---------------------------------------------------------------------------
// restrict_domain: re-examine divisions over a smaller parameter domain

// The circuit itself never changes; the report says whether every division
// still makes sense on the restricted domain and lists the ones that do not.
ConsistencyReport restrict_domain(const Circuit& c, const ParameterDomain& d,
                                  CheckMode mode, int trials, Rng rng);

}  // namespace circ
