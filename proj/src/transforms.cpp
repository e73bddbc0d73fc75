#include "circ/transforms.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <utility>

#include "circ/errors.hpp"

namespace circ {

namespace {

std::string structural_key(const Node& nd) {
  std::string key = op_name(nd.op);
  key += '\x1f';
  switch (nd.op) {
    case Op::Scalar: key += nd.value.str(); break;
    case Op::Param:
    case Op::Input:  key += std::to_string(nd.index); break;
    default:
      key += std::to_string(nd.a);
      key += ',';
      key += std::to_string(nd.b);
  }
  return key;
}

// Rewrites all references through repl and drops the now-unreferenced nodes.
Circuit apply_replacements(const Circuit& c, const std::vector<int>& repl) {
  Circuit out;
  out.params = c.params;
  out.inputs = c.inputs;
  out.nodes = c.nodes;
  for (Node& nd : out.nodes) {
    if (op_is_leaf(nd.op)) continue;
    nd.a = repl[nd.a];
    nd.b = repl[nd.b];
  }
  out.outputs = c.outputs;
  for (int& o : out.outputs) o = repl[o];
  return out;
}

}  // namespace

Circuit join(const Circuit& f, const Circuit& g, const JoinSpec& spec,
             const ParameterDomain& d, CheckMode mode, int trials, Rng rng) {
  require_valid(f);
  require_valid(g);
  if (f.params != g.params)
    throw PreconditionError("joined circuits must share the parameter arity");
  const int slots = static_cast<int>(f.outputs.size());
  if (slots != g.inputs)
    throw PreconditionError(
        "output count of the first circuit must match the input arity of the "
        "second");

  std::vector<int> slot_for_input(g.inputs, -1);
  if (spec.wiring.empty()) {
    for (int i = 0; i < slots; ++i) slot_for_input[i] = i;
  } else {
    if (static_cast<int>(spec.wiring.size()) != slots)
      throw PreconditionError("join wiring must cover every output slot");
    std::vector<char> slot_used(slots, 0);
    for (auto [slot, input] : spec.wiring) {
      if (slot < 0 || slot >= slots || input < 0 || input >= g.inputs)
        throw PreconditionError("join wiring entry out of range");
      if (slot_used[slot] || slot_for_input[input] >= 0)
        throw PreconditionError("join wiring must be a bijection");
      slot_used[slot] = 1;
      slot_for_input[input] = slot;
    }
  }

  Circuit out;
  out.params = f.params;
  out.inputs = f.inputs;
  out.nodes = f.nodes;
  std::vector<int> gmap(g.size(), -1);
  for (int j = 0; j < g.size(); ++j) {
    const Node& nd = g.nodes[j];
    if (nd.op == Op::Input) {
      gmap[j] = f.outputs[slot_for_input[nd.index - 1]];
      continue;
    }
    Node copy = nd;
    if (!op_is_leaf(copy.op)) {
      copy.a = gmap[copy.a];
      copy.b = gmap[copy.b];
    }
    out.nodes.push_back(copy);
    gmap[j] = static_cast<int>(out.nodes.size()) - 1;
  }
  for (int o : g.outputs) out.outputs.push_back(gmap[o]);
  require_valid(out);

  auto rep = consistency_check(out, d, mode, trials, rng);
  if (rep.verdict == Consistency::Inconsistent)
    throw InconsistentJoin(
        rep.witness_node,
        "join made the division at node " + std::to_string(rep.witness_node) +
            " undefined on the whole domain");
  return out;
}

GcResult garbage_collect(const Circuit& c) {
  require_valid(c);
  std::vector<char> live(c.size(), 0);
  std::vector<int> stack(c.outputs.begin(), c.outputs.end());
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (live[i]) continue;
    live[i] = 1;
    const Node& nd = c.nodes[i];
    if (!op_is_leaf(nd.op)) {
      stack.push_back(nd.a);
      stack.push_back(nd.b);
    }
  }
  GcResult res;
  res.circuit.params = c.params;
  res.circuit.inputs = c.inputs;
  std::vector<int> new_id(c.size(), -1);
  for (int i = 0; i < c.size(); ++i) {
    if (!live[i]) {
      ++res.removed;
      continue;
    }
    Node nd = c.nodes[i];
    if (!op_is_leaf(nd.op)) {
      nd.a = new_id[nd.a];
      nd.b = new_id[nd.b];
    }
    new_id[i] = static_cast<int>(res.circuit.nodes.size());
    res.circuit.nodes.push_back(nd);
  }
  res.circuit.outputs.reserve(c.outputs.size());
  for (int o : c.outputs) res.circuit.outputs.push_back(new_id[o]);
  return res;
}

BroadcastResult broadcast(const Circuit& host, const Circuit& g,
                          const std::vector<int>& sites) {
  require_valid(host);
  require_valid(g);
  if (host.params != g.params)
    throw PreconditionError("grafted circuit must share the parameter arity");
  if (static_cast<int>(sites.size()) != g.inputs)
    throw PreconditionError("broadcast needs one site per grafted input");
  for (int s : sites)
    if (s < 0 || s >= host.size())
      throw PreconditionError("broadcast site out of range");

  BroadcastResult res;
  res.circuit = host;
  std::vector<int> gmap(g.size(), -1);
  for (int j = 0; j < g.size(); ++j) {
    const Node& nd = g.nodes[j];
    if (nd.op == Op::Input) {
      gmap[j] = sites[nd.index - 1];
      continue;
    }
    Node copy = nd;
    if (!op_is_leaf(copy.op)) {
      copy.a = gmap[copy.a];
      copy.b = gmap[copy.b];
    }
    res.circuit.nodes.push_back(copy);
    gmap[j] = static_cast<int>(res.circuit.nodes.size()) - 1;
  }
  res.grafted_outputs.reserve(g.outputs.size());
  for (int o : g.outputs) res.grafted_outputs.push_back(gmap[o]);
  return res;
}

ConsistencyReport restrict_domain(const Circuit& c, const ParameterDomain& d,
                                  CheckMode mode, int trials, Rng rng) {
  return consistency_check(c, d, mode, trials, rng);
}

ReduceResult reduce(const Circuit& c, const ParameterDomain& d, Rng rng,
                    const ReduceOptions& opt) {
  require_valid(c);
  if (domain_r(d) != c.params)
    throw PreconditionError("domain arity does not match circuit parameters");

  ReduceResult res;
  Circuit cur = c;

  // Sample points where the whole original circuit evaluates. Merging and
  // collection never add divisions, so the points stay usable in every round.
  std::vector<std::vector<Scalar>> us, xs;
  SampleOptions sopt;
  for (int p = 0; p < opt.points; ++p) {
    bool placed = false;
    for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
      auto u = sample_point(d, rng, sopt);
      std::vector<Scalar> x;
      x.reserve(c.inputs);
      for (int i = 0; i < c.inputs; ++i)
        x.emplace_back(rng.uniform_int(-sopt.bound, sopt.bound));
      if (eval_trace(cur, u, x).first_fail >= 0) continue;
      us.push_back(std::move(u));
      xs.push_back(std::move(x));
      placed = true;
    }
  }
  res.semantic_pass_ran = static_cast<int>(us.size()) == opt.points;

  for (int round = 0; round < opt.max_rounds; ++round) {
    res.rounds = round + 1;
    bool changed = false;

    // Structural pass: identical opcode and identical (already merged) args.
    {
      std::unordered_map<std::string, int> seen;
      std::vector<int> repl(cur.size());
      int merged = 0;
      for (int i = 0; i < cur.size(); ++i) {
        Node nd = cur.nodes[i];
        if (!op_is_leaf(nd.op)) {
          nd.a = repl[nd.a];
          nd.b = repl[nd.b];
        }
        auto [it, fresh] = seen.emplace(structural_key(nd), i);
        repl[i] = fresh ? i : it->second;
        if (!fresh) ++merged;
      }
      if (merged > 0) {
        cur = garbage_collect(apply_replacements(cur, repl)).circuit;
        res.merged_structural += merged;
        changed = true;
      }
    }

    // Semantic pass: group by exact values at the shared points, merge each
    // group into its smallest node id. With opt.exact every candidate pair is
    // confirmed by domain-adapted expansion before merging; if that expansion
    // is unavailable (unsolvable constraints, budget) candidates are left
    // alone rather than merged on samples only.
    if (res.semantic_pass_ran) {
      std::vector<PointTrace> traces;
      traces.reserve(us.size());
      for (std::size_t p = 0; p < us.size(); ++p)
        traces.push_back(eval_trace(cur, us[p], xs[p]));

      std::map<std::vector<Scalar>, std::vector<int>> groups;
      for (int i = 0; i < cur.size(); ++i) {
        std::vector<Scalar> key;
        key.reserve(traces.size());
        for (const auto& tr : traces) key.push_back(*tr.values[i]);
        groups[std::move(key)].push_back(i);
      }

      const ExpandResult* exact_values = nullptr;
      std::optional<ExpandResult> expansion;
      if (opt.exact) {
        expansion = expand_over_domain(cur, d);
        if (expansion && expansion->ok) exact_values = &*expansion;
      }

      std::vector<int> repl(cur.size());
      for (int i = 0; i < cur.size(); ++i) repl[i] = i;
      int merged = 0;
      for (const auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        const int rep = members[0];
        for (std::size_t k = 1; k < members.size(); ++k) {
          if (opt.exact &&
              (!exact_values ||
               !(exact_values->values[rep] == exact_values->values[members[k]])))
            continue;
          repl[members[k]] = rep;
          ++merged;
        }
      }
      if (merged > 0) {
        cur = garbage_collect(apply_replacements(cur, repl)).circuit;
        res.merged_semantic += merged;
        changed = true;
      }
    }

    if (!changed) break;
  }

  res.circuit = std::move(cur);
  return res;
}

}  // namespace circ
