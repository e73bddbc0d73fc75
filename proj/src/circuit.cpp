#include "circ/circuit.hpp"

#include "circ/errors.hpp"

namespace circ {

const char* op_name(Op op) {
  switch (op) {
    case Op::Scalar: return "scalar";
    case Op::Param: return "param";
    case Op::Input: return "input";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
  }
  return "?";
}

bool op_is_leaf(Op op) {
  return op == Op::Scalar || op == Op::Param || op == Op::Input;
}

Node scalar_node(const Scalar& v) {
  Node n;
  n.op = Op::Scalar;
  n.value = v;
  return n;
}

Node param_node(int index) {
  Node n;
  n.op = Op::Param;
  n.index = index;
  return n;
}

Node input_node(int index) {
  Node n;
  n.op = Op::Input;
  n.index = index;
  return n;
}

Node op_node(Op op, int a, int b) {
  Node n;
  n.op = op;
  n.a = a;
  n.b = b;
  return n;
}

ValidationReport validate(const Circuit& c) {
  ValidationReport rep;
  auto flag = [&](Violation::Kind k, int node, std::string msg, bool fatal) {
    rep.violations.push_back({k, node, std::move(msg), fatal});
    if (fatal) rep.valid = false;
  };

  if (c.params < 0) flag(Violation::Kind::Structure, -1, "negative parameter count", true);
  if (c.inputs < 0) flag(Violation::Kind::Structure, -1, "negative input count", true);

  const int n = c.size();
  for (int i = 0; i < n; ++i) {
    const Node& nd = c.nodes[i];
    if (op_is_leaf(nd.op)) {
      if (nd.a != -1 || nd.b != -1)
        flag(Violation::Kind::Structure, i, "leaf node carries arguments", true);
      if (nd.op == Op::Param && (nd.index < 1 || nd.index > c.params))
        flag(Violation::Kind::Index, i,
             "parameter index " + std::to_string(nd.index) + " outside 1.." +
                 std::to_string(c.params),
             true);
      if (nd.op == Op::Input && (nd.index < 1 || nd.index > c.inputs))
        flag(Violation::Kind::Index, i,
             "input index " + std::to_string(nd.index) + " outside 1.." +
                 std::to_string(c.inputs),
             true);
    } else {
      for (int arg : {nd.a, nd.b}) {
        if (arg < 0 || arg >= n)
          flag(Violation::Kind::Structure, i, "argument position out of range", true);
        else if (arg >= i)
          flag(Violation::Kind::Ordering, i,
               "argument " + std::to_string(arg) + " does not precede node " +
                   std::to_string(i),
               true);
      }
    }
  }

  if (c.outputs.empty())
    flag(Violation::Kind::Output, -1, "circuit has no outputs", true);
  for (int o : c.outputs)
    if (o < 0 || o >= n)
      flag(Violation::Kind::Output, -1, "output position out of range", true);

  if (rep.valid) {
    std::vector<int> deg = outdegrees(c);
    std::vector<char> is_out(n, 0);
    for (int o : c.outputs) is_out[o] = 1;
    for (int i = 0; i < n; ++i)
      if (deg[i] == 0 && !is_out[i])
        flag(Violation::Kind::Dangling, i, "sink node is not an output", false);
  }
  return rep;
}

void require_valid(const Circuit& c) {
  ValidationReport rep = validate(c);
  if (rep.valid) return;
  for (const auto& v : rep.violations)
    if (v.fatal)
      throw PreconditionError(std::string("invalid circuit: ") + v.message +
                              (v.node >= 0 ? " (node " + std::to_string(v.node) + ")" : ""));
}

std::vector<NodeClass> classify(const Circuit& c) {
  require_valid(c);
  std::vector<NodeClass> cls(c.size());
  for (int i = 0; i < c.size(); ++i) {
    const Node& nd = c.nodes[i];
    NodeClass& k = cls[i];
    switch (nd.op) {
      case Op::Scalar:
        break;
      case Op::Param:
        k.depends_on_param = true;
        break;
      case Op::Input:
        k.depends_on_input = true;
        break;
      default: {
        const NodeClass& ka = cls[nd.a];
        const NodeClass& kb = cls[nd.b];
        k.depends_on_input = ka.depends_on_input || kb.depends_on_input;
        k.depends_on_param = ka.depends_on_param || kb.depends_on_param;
        if (nd.op == Op::Add || nd.op == Op::Mul)
          k.is_essential = ka.depends_on_input && kb.depends_on_input;
        else if (nd.op == Op::Div)
          k.is_essential = kb.depends_on_input;
        break;
      }
    }
    k.is_parameter_node = !k.depends_on_input;
  }
  return cls;
}

std::vector<int> outdegrees(const Circuit& c) {
  std::vector<int> deg(c.size(), 0);
  for (const Node& nd : c.nodes) {
    if (op_is_leaf(nd.op)) continue;
    if (nd.a >= 0 && nd.a < c.size()) ++deg[nd.a];
    if (nd.b >= 0 && nd.b < c.size()) ++deg[nd.b];
  }
  return deg;
}

int CircuitBuilder::scalar(const Scalar& v) {
  std::string key = v.str();
  auto it = scalar_cache_.find(key);
  if (it != scalar_cache_.end()) return it->second;
  c_.nodes.push_back(scalar_node(v));
  int pos = c_.size() - 1;
  scalar_cache_.emplace(std::move(key), pos);
  return pos;
}

int CircuitBuilder::param(int index) {
  auto it = param_cache_.find(index);
  if (it != param_cache_.end()) return it->second;
  c_.nodes.push_back(param_node(index));
  int pos = c_.size() - 1;
  param_cache_.emplace(index, pos);
  return pos;
}

int CircuitBuilder::input(int index) {
  auto it = input_cache_.find(index);
  if (it != input_cache_.end()) return it->second;
  c_.nodes.push_back(input_node(index));
  int pos = c_.size() - 1;
  input_cache_.emplace(index, pos);
  return pos;
}

int CircuitBuilder::op(Op o, int a, int b) {
  if (op_is_leaf(o)) throw PreconditionError("op() expects a binary operation");
  if (a < 0 || a >= c_.size() || b < 0 || b >= c_.size())
    throw PreconditionError("builder argument out of range");
  c_.nodes.push_back(op_node(o, a, b));
  return c_.size() - 1;
}

void CircuitBuilder::mark_output(int node) {
  if (node < 0 || node >= c_.size())
    throw PreconditionError("builder output out of range");
  c_.outputs.push_back(node);
}

Circuit CircuitBuilder::take() { return std::move(c_); }

}  // namespace circ
