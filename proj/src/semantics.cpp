#include "circ/semantics.hpp"

#include <algorithm>
#include <utility>

#include "circ/errors.hpp"

namespace circ {

namespace {

std::vector<int> identity_map(int k) {
  std::vector<int> m(k);
  for (int i = 0; i < k; ++i) m[i] = i;
  return m;
}

RatFunc lift_arity(const RatFunc& f, int new_arity) {
  auto id = identity_map(f.arity());
  return RatFunc(f.num().remap_vars(new_arity, id),
                 f.den().remap_vars(new_arity, id));
}

// Shared expansion pass. Parameter leaves take their value from `pimg`,
// input leaf i becomes variable offset+i-1 of the combined ring.
ExpandResult expand_core(const Circuit& c, int arity,
                         const std::vector<RatFunc>& pimg, int offset,
                         const ExpandOptions& opt) {
  require_valid(c);
  const auto cls = classify(c);

  ExpandResult res;
  for (int i = 0; i < c.size(); ++i) {
    const Node& nd = c.nodes[i];
    if (nd.op != Op::Div) continue;
    if (cls[nd.b].depends_on_input) res.essentially_division_free = false;
    if (cls[nd.b].depends_on_input || cls[nd.b].depends_on_param)
      res.totally_division_free = false;
  }

  res.values.reserve(c.size());
  for (int i = 0; i < c.size(); ++i) {
    const Node& nd = c.nodes[i];
    RatFunc v(arity);
    switch (nd.op) {
      case Op::Scalar:
        v = RatFunc::constant(arity, nd.value);
        break;
      case Op::Param:
        v = pimg[nd.index - 1];
        break;
      case Op::Input:
        v = RatFunc::variable(arity, offset + nd.index - 1);
        break;
      case Op::Add:
        v = res.values[nd.a] + res.values[nd.b];
        break;
      case Op::Sub:
        v = res.values[nd.a] - res.values[nd.b];
        break;
      case Op::Mul:
        v = res.values[nd.a] * res.values[nd.b];
        break;
      case Op::Div: {
        const RatFunc& den = res.values[nd.b];
        if (den.is_zero()) {
          res.ok = false;
          res.fail_node = i;
          res.fail_kind = "division_by_zero_function";
          return res;
        }
        v = res.values[nd.a] / den;
        break;
      }
    }
    if (v.term_count() > opt.budget) {
      res.ok = false;
      res.fail_node = i;
      res.fail_kind = "budget_exceeded";
      return res;
    }
    if (res.polynomial_in_inputs &&
        !is_polynomial_in_suffix(v.num(), v.den(), offset))
      res.polynomial_in_inputs = false;
    res.values.push_back(std::move(v));
  }
  res.outputs.reserve(c.outputs.size());
  for (int o : c.outputs) res.outputs.push_back(res.values[o]);
  return res;
}

std::vector<Scalar> sample_inputs(int n, Rng& rng, const SampleOptions& opt) {
  std::vector<Scalar> x;
  x.reserve(n);
  for (int i = 0; i < n; ++i)
    x.emplace_back(rng.uniform_int(-opt.bound, opt.bound));
  return x;
}

}  // namespace

PointTrace eval_trace(const Circuit& c, const std::vector<Scalar>& u,
                      const std::vector<Scalar>& x) {
  require_valid(c);
  if (static_cast<int>(u.size()) != c.params)
    throw PreconditionError("parameter vector has wrong length");
  if (static_cast<int>(x.size()) != c.inputs)
    throw PreconditionError("input vector has wrong length");

  PointTrace tr;
  tr.values.resize(c.size());
  tr.status.assign(c.size(), 0);
  for (int i = 0; i < c.size(); ++i) {
    const Node& nd = c.nodes[i];
    switch (nd.op) {
      case Op::Scalar:
        tr.values[i] = nd.value;
        break;
      case Op::Param:
        tr.values[i] = u[nd.index - 1];
        break;
      case Op::Input:
        tr.values[i] = x[nd.index - 1];
        break;
      default: {
        const auto& a = tr.values[nd.a];
        const auto& b = tr.values[nd.b];
        if (!a || !b) {
          tr.status[i] = 2;
        } else if (nd.op == Op::Div && b->is_zero()) {
          tr.status[i] = 1;
        } else {
          switch (nd.op) {
            case Op::Add: tr.values[i] = *a + *b; break;
            case Op::Sub: tr.values[i] = *a - *b; break;
            case Op::Mul: tr.values[i] = *a * *b; break;
            default:      tr.values[i] = *a / *b; break;
          }
        }
      }
    }
    if (tr.status[i] != 0 && tr.first_fail < 0) tr.first_fail = i;
  }
  return tr;
}

EvalResult eval_point(const Circuit& c, const std::vector<Scalar>& u,
                      const std::vector<Scalar>& x) {
  PointTrace tr = eval_trace(c, u, x);
  EvalResult res;
  res.values = std::move(tr.values);
  for (int o : c.outputs) {
    if (!res.values[o]) {
      res.ok = false;
      res.fail_node = tr.first_fail;
      return res;
    }
  }
  for (int o : c.outputs) res.outputs.push_back(*res.values[o]);
  return res;
}

ExpandResult expand_symbolic(const Circuit& c, const ExpandOptions& opt) {
  const int arity = c.params + c.inputs;
  std::vector<RatFunc> pimg;
  pimg.reserve(c.params);
  for (int i = 0; i < c.params; ++i)
    pimg.push_back(RatFunc::variable(arity, i));
  return expand_core(c, arity, pimg, c.params, opt);
}

ExpandResult expand_at_params(const Circuit& c, const std::vector<Scalar>& u,
                              const ExpandOptions& opt) {
  if (static_cast<int>(u.size()) != c.params)
    throw PreconditionError("parameter vector has wrong length");
  std::vector<RatFunc> pimg;
  pimg.reserve(c.params);
  for (const Scalar& s : u) pimg.push_back(RatFunc::constant(c.inputs, s));
  return expand_core(c, c.inputs, pimg, 0, opt);
}

std::optional<ExpandResult> expand_over_domain(const Circuit& c,
                                               const ParameterDomain& d,
                                               const ExpandOptions& opt) {
  if (domain_r(d) != c.params)
    throw PreconditionError("domain arity does not match circuit parameters");
  const int n = c.inputs;
  if (std::holds_alternative<AffineSpace>(d)) return expand_symbolic(c, opt);
  if (const auto* im = std::get_if<ImageDomain>(&d)) {
    const int arity = im->source_dim + n;
    std::vector<RatFunc> pimg;
    pimg.reserve(im->r);
    for (const SparsePoly& p : im->map)
      pimg.emplace_back(p.remap_vars(arity, identity_map(im->source_dim)));
    return expand_core(c, arity, pimg, im->source_dim, opt);
  }
  const auto& loc = std::get<Localized>(d);
  auto sf = solve_generators(loc.generators, loc.r);
  if (!sf) return std::nullopt;
  auto imgs = solved_images(*sf, loc.r);
  if (RatFunc(loc.inequation).substitute(imgs).is_zero())
    throw DomainSampleError(
        DomainSampleError::Kind::EmptyDomainSuspected,
        "the inequation vanishes identically on the constraint set");
  const int arity = loc.r + n;
  std::vector<RatFunc> pimg;
  pimg.reserve(loc.r);
  for (const RatFunc& f : imgs) pimg.push_back(lift_arity(f, arity));
  return expand_core(c, arity, pimg, loc.r, opt);
}

ConsistencyReport consistency_check(const Circuit& c, const ParameterDomain& d,
                                    CheckMode mode, int trials, Rng rng) {
  require_valid(c);
  if (domain_r(d) != c.params)
    throw PreconditionError("domain arity does not match circuit parameters");

  std::vector<int> divs;
  for (int i = 0; i < c.size(); ++i)
    if (c.nodes[i].op == Op::Div) divs.push_back(i);

  ConsistencyReport rep;
  if (divs.empty()) {
    rep.detail = "no divisions";
    return rep;
  }

  if (mode == CheckMode::Exact) {
    // Unsolvable constraint sets return nullopt and fall through to sampling.
    auto er = expand_over_domain(c, d);
    if (er) {
      if (er->ok) return rep;
      if (er->fail_kind == "division_by_zero_function") {
        rep.verdict = Consistency::Inconsistent;
        rep.witness_node = er->fail_node;
        rep.detail = "divisor vanishes identically on the domain";
      } else {
        rep.verdict = Consistency::Undecided;
        rep.undecided_nodes = divs;
        rep.detail = "expansion exceeded the term budget";
      }
      return rep;
    }
  }

  // Sampling path: count, per division, how often the divisor evaluates and
  // how often it evaluates to zero.
  if (trials < 1) trials = 1;
  std::vector<long> evaluable(divs.size(), 0), zero(divs.size(), 0);
  SampleOptions sopt;
  for (int t = 0; t < trials; ++t) {
    std::vector<Scalar> u;
    try {
      u = sample_point(d, rng, sopt);
    } catch (const DomainSampleError& e) {
      if (e.kind == DomainSampleError::Kind::Unsupported) {
        rep.verdict = Consistency::Undecided;
        rep.undecided_nodes = divs;
        rep.detail = e.what();
        return rep;
      }
      throw;
    }
    const auto x = sample_inputs(c.inputs, rng, sopt);
    const PointTrace tr = eval_trace(c, u, x);
    for (std::size_t k = 0; k < divs.size(); ++k) {
      switch (tr.status[divs[k]]) {
        case 0: ++evaluable[k]; break;
        case 1: ++evaluable[k]; ++zero[k]; break;
        default: break;  // divisor itself was undefined; no evidence
      }
    }
  }
  for (std::size_t k = 0; k < divs.size(); ++k) {
    if (evaluable[k] > 0 && zero[k] == evaluable[k]) {
      rep.verdict = Consistency::Inconsistent;
      rep.witness_node = divs[k];
      rep.detail = "divisor vanished at every sample point";
      return rep;
    }
    if (zero[k] > 0 || evaluable[k] == 0) rep.undecided_nodes.push_back(divs[k]);
  }
  if (!rep.undecided_nodes.empty()) {
    rep.verdict = Consistency::Undecided;
    rep.detail = "some divisors vanished at part of the sample";
  }
  return rep;
}

Fingerprint fingerprint(const Circuit& c, const ParameterDomain& d, Rng rng,
                        int k, const SampleOptions& opt) {
  require_valid(c);
  if (domain_r(d) != c.params)
    throw PreconditionError("domain arity does not match circuit parameters");
  if (k < 1) throw PreconditionError("fingerprint needs at least one point");

  Fingerprint fp;
  fp.params = c.params;
  fp.inputs = c.inputs;
  std::uint64_t tag = 0xcbf29ce484222325ull;
  for (int p = 0; p < k; ++p) {
    bool placed = false;
    for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
      auto u = sample_point(d, rng, opt);
      auto x = sample_inputs(c.inputs, rng, opt);
      EvalResult ev = eval_point(c, u, x);
      if (!ev.ok) continue;
      std::vector<Scalar> coords = std::move(u);
      coords.insert(coords.end(), x.begin(), x.end());
      for (const Scalar& s : coords) tag = (tag ^ s.hash()) * 0x100000001b3ull;
      fp.points.push_back(std::move(coords));
      fp.output_values.push_back(std::move(ev.outputs));
      placed = true;
    }
    if (!placed)
      throw Error("fingerprint: no evaluable sample point found; "
                  "check the circuit for consistency first");
  }
  fp.tag = tag;
  return fp;
}

bool equal_results(const Fingerprint& a, const Fingerprint& b) {
  if (a.params != b.params || a.inputs != b.inputs) return false;
  if (a.points != b.points) return false;
  if (a.output_values.size() != b.output_values.size()) return false;
  for (std::size_t i = 0; i < a.output_values.size(); ++i) {
    auto va = a.output_values[i];
    auto vb = b.output_values[i];
    if (va.size() != vb.size()) return false;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    if (va != vb) return false;
  }
  return true;
}

}  // namespace circ
