#include "circ/cost.hpp"

#include <algorithm>

namespace circ {

std::vector<int> essential_parameters(const Circuit& c) {
  require_valid(c);
  const auto cls = classify(c);
  std::vector<char> feeds_input_dep(c.size(), 0);
  for (int i = 0; i < c.size(); ++i) {
    const Node& nd = c.nodes[i];
    if (op_is_leaf(nd.op) || !cls[i].depends_on_input) continue;
    feeds_input_dep[nd.a] = 1;
    feeds_input_dep[nd.b] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i < c.size(); ++i)
    if (feeds_input_dep[i] && cls[i].depends_on_param &&
        !cls[i].depends_on_input)
      out.push_back(i);
  return out;
}

CostReport cost(const Circuit& c) {
  require_valid(c);
  const auto cls = classify(c);

  CostReport rep;
  rep.node_count = c.size();

  std::vector<int> dt(c.size(), 0), dn(c.size(), 0);
  for (int i = 0; i < c.size(); ++i) {
    const Node& nd = c.nodes[i];
    if (op_is_leaf(nd.op)) continue;

    const bool a_in = cls[nd.a].depends_on_input;
    const bool b_in = cls[nd.b].depends_on_input;
    const bool a_scalar =
        !cls[nd.a].depends_on_input && !cls[nd.a].depends_on_param;
    const bool b_scalar =
        !cls[nd.b].depends_on_input && !cls[nd.b].depends_on_param;

    bool essential = false;
    if (nd.op == Op::Mul) {
      essential = a_in && b_in;
      if (essential) ++rep.essential_mults;
      if (!a_scalar && !b_scalar) ++rep.total_mults_nonscalar;
      const bool a_param_only = cls[nd.a].depends_on_param && !a_in;
      const bool b_param_only = cls[nd.b].depends_on_param && !b_in;
      if ((a_in && b_param_only) || (b_in && a_param_only)) ++rep.param_mults;
    } else if (nd.op == Op::Div) {
      essential = b_in;
      if (essential) ++rep.essential_divs;
      if (!b_scalar) ++rep.total_mults_nonscalar;
    }

    dt[i] = 1 + std::max(dt[nd.a], dt[nd.b]);
    dn[i] = (essential ? 1 : 0) + std::max(dn[nd.a], dn[nd.b]);
  }
  rep.nonscalar_size = rep.essential_mults + rep.essential_divs;
  for (int o : c.outputs) {
    rep.depth_total = std::max(rep.depth_total, dt[o]);
    rep.depth_nonscalar = std::max(rep.depth_nonscalar, dn[o]);
  }
  rep.essential_param_count =
      static_cast<int>(essential_parameters(c).size());
  return rep;
}

}  // namespace circ
