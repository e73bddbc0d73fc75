#pragma once

#include <map>
#include <string>
#include <vector>

#include "circ/scalar.hpp"

namespace circ {

enum class Op { Scalar, Param, Input, Add, Sub, Mul, Div };

const char* op_name(Op op);
bool op_is_leaf(Op op);

struct Node {
  Op op = Op::Scalar;
  Scalar value{};     // Op::Scalar only
  int index = 0;      // Op::Param / Op::Input only, 1-based
  int a = -1, b = -1; // argument positions, binary ops only
};

// Labelled DAG over `params` parameters and `inputs` input variables. Nodes
// are stored in evaluation order: in a well-formed circuit every argument
// precedes its user. Output entries are node positions; the list is ordered
// and may contain repeats, since transforms preserve the multiset of final
// results rather than their positions.
struct Circuit {
  int params = 0;
  int inputs = 0;
  std::vector<Node> nodes;
  std::vector<int> outputs;

  int size() const { return static_cast<int>(nodes.size()); }
};

Node scalar_node(const Scalar& v);
Node param_node(int index);
Node input_node(int index);
Node op_node(Op op, int a, int b);

struct Violation {
  enum class Kind { Structure, Index, Ordering, Output, Dangling };
  Kind kind;
  int node;  // -1 for circuit-level findings
  std::string message;
  bool fatal;
};

struct ValidationReport {
  bool valid = true;  // no fatal violations
  std::vector<Violation> violations;
};

// Structural well-formedness. Dangling non-output sinks are reported but not
// fatal: grafting transforms create them transiently and garbage collection
// removes them again.
ValidationReport validate(const Circuit& c);
void require_valid(const Circuit& c);  // throws PreconditionError with details

struct NodeClass {
  bool depends_on_input = false;
  bool depends_on_param = false;
  bool is_parameter_node = false;  // == !depends_on_input
  // Add/Mul with both arguments input-dependent, or Div whose divisor is.
  bool is_essential = false;
};

std::vector<NodeClass> classify(const Circuit& c);  // requires a valid circuit

std::vector<int> outdegrees(const Circuit& c);

// Incremental construction helper. Leaves are memoized (one node per distinct
// scalar value, parameter index, or input index); operation nodes are not.
class CircuitBuilder {
 public:
  CircuitBuilder(int params, int inputs) {
    c_.params = params;
    c_.inputs = inputs;
  }

  int scalar(const Scalar& v);
  int scalar(long v) { return scalar(Scalar(v)); }
  int param(int index);
  int input(int index);
  int op(Op o, int a, int b);
  int add(int a, int b) { return op(Op::Add, a, b); }
  int sub(int a, int b) { return op(Op::Sub, a, b); }
  int mul(int a, int b) { return op(Op::Mul, a, b); }
  int div(int a, int b) { return op(Op::Div, a, b); }

  void mark_output(int node);
  Circuit take();

 private:
  Circuit c_;
  std::map<std::string, int> scalar_cache_;
  std::map<int, int> param_cache_, input_cache_;
};

}  // namespace circ
