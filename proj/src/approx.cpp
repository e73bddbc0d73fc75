#include "circ/approx.hpp"

#include <algorithm>
#include <utility>

#include "circ/errors.hpp"
#include "circ/semantics.hpp"

namespace circ {

namespace {

// Substitutes the germ into a parameter-space polynomial.
ScalarSeries series_at_germ(const SparsePoly& p,
                            const std::vector<ScalarSeries>& germ) {
  const ScalarSeries zero = ScalarSeries::exact(Scalar(0), 0, {});
  const ScalarSeries one = ScalarSeries::constant(Scalar(1));
  return p.eval_generic<ScalarSeries>(
      germ, zero, one,
      [](const Scalar& c) { return ScalarSeries::constant(c); });
}

PolySeries lift_to_polys(const ScalarSeries& s, int arity) {
  const SparsePoly proto(arity);
  if (s.is_zero()) return PolySeries::make(proto, s.known(), {}, s.known());
  std::vector<SparsePoly> coeffs;
  coeffs.reserve(s.stored());
  const long lead = s.order();
  for (std::size_t i = 0; i < s.stored(); ++i)
    coeffs.push_back(SparsePoly::constant(arity, s.coef_at(lead + i)));
  return PolySeries::make(proto, lead, std::move(coeffs), s.known());
}

// Exact value of the stored coefficient window at a concrete eps.
Scalar germ_value_at(const ScalarSeries& s, const Scalar& eps) {
  if (s.is_zero()) return Scalar(0);
  const long lead = s.order();
  Scalar acc(0), p(1);
  // Negative exponents first: eps^lead, then ascend by multiplying by eps.
  if (lead < 0) {
    for (long e = 0; e > lead; --e) p = p / eps;
  } else {
    for (long e = 0; e < lead; ++e) p = p * eps;
  }
  for (std::size_t i = 0; i < s.stored(); ++i) {
    acc = acc + s.coef_at(lead + i) * p;
    p = p * eps;
  }
  return acc;
}

// Caps a germ entry at the instance precision. Exact entries otherwise force
// divisions to terminate, which most quotients of germs do not; truncating at
// prec turns those into tracked-precision results instead. A genuine zero
// entry stays exact so that dividing by it remains a hard error.
ScalarSeries window_at(const ScalarSeries& s, int prec) {
  if (s.is_zero() && s.is_exact()) return s;
  const long known = std::min<long>(s.known(), prec);
  if (s.is_zero()) return ScalarSeries::make(Scalar(0), known, {}, known);
  const long lead = s.order();
  std::vector<Scalar> coeffs;
  for (long e = lead; e < std::min(known, lead + static_cast<long>(s.stored())); ++e)
    coeffs.push_back(s.coef_at(e));
  return ScalarSeries::make(Scalar(0), lead, std::move(coeffs), known);
}

mpq_class coef_distance(const SparsePoly& a, const SparsePoly& b) {
  mpq_class best(0);
  const SparsePoly diff = a - b;
  for (const auto& [e, c] : diff.terms()) {
    mpq_class m = c.abs_bound();
    if (m > best) best = m;
  }
  return best;
}

}  // namespace

void validate_instance(const ApproxInstance& inst) {
  const int r = domain_r(inst.domain);
  if (static_cast<int>(inst.germ.size()) != r)
    throw PreconditionError("germ arity does not match the domain");
  if (inst.prec < 1) throw PreconditionError("precision must be positive");
  if (const auto* loc = std::get_if<Localized>(&inst.domain)) {
    for (const SparsePoly& g : loc->generators) {
      if (!series_at_germ(g, inst.germ).is_zero())
        throw PreconditionError(
            "a domain generator does not vanish on the germ");
    }
    if (series_at_germ(loc->inequation, inst.germ).is_zero())
      throw PreconditionError(
          "the domain inequation vanishes on the germ as far as precision "
          "shows");
  }
}

ApproxResult approx_eval(const Circuit& c, const ApproxInstance& inst) {
  require_valid(c);
  validate_instance(inst);
  if (domain_r(inst.domain) != c.params)
    throw PreconditionError("germ arity does not match circuit parameters");

  const int n = c.inputs;
  const auto cls = classify(c);

  // Parameter nodes in scalar series, input-dependent nodes in polynomial
  // series; a parameter value is lifted once its consumer needs polynomials.
  std::vector<ScalarSeries> sval(c.size(), ScalarSeries::exact(Scalar(0), 0, {}));
  std::vector<PolySeries> pval(c.size(), PolySeries::exact(SparsePoly(n), 0, {}));

  auto poly_of = [&](int i) -> PolySeries {
    if (cls[i].depends_on_input) return pval[i];
    return lift_to_polys(sval[i], n);
  };

  for (int i = 0; i < c.size(); ++i) {
    const Node& nd = c.nodes[i];
    if (!cls[i].depends_on_input) {
      switch (nd.op) {
        case Op::Scalar: sval[i] = ScalarSeries::constant(nd.value); break;
        case Op::Param:
          sval[i] = window_at(inst.germ[nd.index - 1], inst.prec);
          break;
        case Op::Add: sval[i] = sval[nd.a] + sval[nd.b]; break;
        case Op::Sub: sval[i] = sval[nd.a] - sval[nd.b]; break;
        case Op::Mul: sval[i] = sval[nd.a] * sval[nd.b]; break;
        case Op::Div: sval[i] = sval[nd.a] / sval[nd.b]; break;
        default:
          throw PreconditionError("input leaf classified as parameter node");
      }
      continue;
    }
    switch (nd.op) {
      case Op::Input:
        pval[i] = PolySeries::constant(SparsePoly::variable(n, nd.index - 1));
        break;
      case Op::Add: pval[i] = poly_of(nd.a) + poly_of(nd.b); break;
      case Op::Sub: pval[i] = poly_of(nd.a) - poly_of(nd.b); break;
      case Op::Mul: pval[i] = poly_of(nd.a) * poly_of(nd.b); break;
      case Op::Div:
        if (cls[nd.b].depends_on_input)
          throw PreconditionError(
              "divisor at node " + std::to_string(i) +
              " depends on an input; series evaluation needs every divisor "
              "to be a parameter node");
        pval[i] = poly_of(nd.a) / lift_to_polys(sval[nd.b], n);
        break;
      default:
        throw PreconditionError("unexpected leaf kind");
    }
  }

  ApproxResult res;
  res.outputs.reserve(c.outputs.size());
  for (int o : c.outputs) res.outputs.push_back(poly_of(o));

  res.holomorphic = true;
  for (const PolySeries& s : res.outputs)
    if (!s.is_zero() && s.order() < 0) res.holomorphic = false;

  if (res.holomorphic) {
    for (const PolySeries& s : res.outputs) {
      res.limit.push_back(s.coef_at(0));
      // Shift out eps^0: remaining coefficients, one order down.
      if (s.is_zero() || s.known() <= 1) {
        const long kn = s.is_exact() ? TruncatedLaurent<SparsePoly>::kExact
                                     : s.known() - 1;
        res.tail.push_back(PolySeries::make(SparsePoly(n), kn, {}, kn));
        continue;
      }
      std::vector<SparsePoly> coeffs;
      const long lead = std::max(s.order(), 1L);
      for (long e = lead; e < s.order() + static_cast<long>(s.stored()); ++e)
        coeffs.push_back(s.coef_at(e));
      const long kn = s.is_exact() ? TruncatedLaurent<SparsePoly>::kExact
                                   : s.known() - 1;
      res.tail.push_back(
          PolySeries::make(SparsePoly(n), lead - 1, std::move(coeffs), kn));
    }
  }
  return res;
}

RepresentsResult represents(const Circuit& c, const ApproxInstance& inst) {
  const ApproxResult ev = approx_eval(c, inst);
  RepresentsResult res;
  res.holomorphic = ev.holomorphic;
  if (ev.holomorphic) {
    res.limit = ev.limit;
    return res;
  }
  long worst = 0;
  int slot = -1;
  for (std::size_t s = 0; s < ev.outputs.size(); ++s) {
    const PolySeries& out = ev.outputs[s];
    if (out.is_zero() || out.order() >= 0) continue;
    if (out.order() < worst) {
      worst = out.order();
      slot = static_cast<int>(s);
    }
  }
  res.worst_order = worst;
  res.witness_output = slot;
  res.witness_node = c.outputs[slot];
  return res;
}

WitnessTable convergence_witness(const Circuit& c, const ApproxInstance& inst,
                                 int k_max) {
  const RepresentsResult rep = represents(c, inst);
  if (!rep.holomorphic)
    throw PreconditionError(
        "the instance does not represent a polynomial; no limit to witness");
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");

  WitnessTable table;
  table.bound_constant = 0;
  int evaluated = 0;
  for (int k = 1; k <= k_max; ++k) {
    WitnessRow row;
    row.k = k;
    row.eps = Scalar(1, 1L << std::min(k, 62));
    std::vector<Scalar> u;
    u.reserve(inst.germ.size());
    for (const ScalarSeries& s : inst.germ)
      u.push_back(germ_value_at(s, row.eps));

    const ExpandResult ex = expand_at_params(c, u);
    if (!ex.ok) {
      table.rows.push_back(std::move(row));
      continue;
    }
    row.evaluated = true;
    ++evaluated;
    for (std::size_t s = 0; s < ex.outputs.size(); ++s) {
      if (!ex.outputs[s].is_polynomial())
        throw Error("evaluation produced a non-polynomial output");
      const SparsePoly g = ex.outputs[s].num().scaled(
          Scalar(1) / ex.outputs[s].den().constant_value());
      mpq_class d = coef_distance(g, rep.limit[s]);
      if (d > row.deviation) row.deviation = d;
      row.value.push_back(g);
    }
    mpq_class ratio = row.deviation / mpq_class(row.eps.abs_bound());
    if (ratio > table.bound_constant) table.bound_constant = ratio;
    table.rows.push_back(std::move(row));
  }
  if (evaluated == 0)
    throw Error("every witness row failed to evaluate; the curve runs inside "
                "the divisor locus");
  return table;
}

CoefficientCloud sample_cloud(const Circuit& c, const ParameterDomain& d,
                              int count, Rng rng) {
  require_valid(c);
  if (c.outputs.size() != 1)
    throw PreconditionError("cloud sampling expects a single output");
  if (domain_r(d) != c.params)
    throw PreconditionError("domain arity does not match circuit parameters");

  CoefficientCloud cloud;
  cloud.arity = c.inputs;
  SampleOptions opt;
  std::uint64_t tag = 0xcbf29ce484222325ull;
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
      const auto u = sample_point(d, rng, opt);
      const ExpandResult ex = expand_at_params(c, u);
      if (!ex.ok) continue;
      if (!ex.outputs[0].is_polynomial())
        throw PreconditionError(
            "final result is not polynomial in the inputs at a sample");
      const SparsePoly g = ex.outputs[0].num().scaled(
          Scalar(1) / ex.outputs[0].den().constant_value());
      for (const Scalar& s : u) tag = (tag ^ s.hash()) * 0x100000001b3ull;
      cloud.members.push_back(g);
      placed = true;
    }
    if (!placed)
      throw Error("no evaluable sample point found for the cloud");
  }
  cloud.seed = tag;
  return cloud;
}

CloudDistance cloud_membership(const CoefficientCloud& cloud,
                               const SparsePoly& h, const mpq_class& radius) {
  if (cloud.members.empty()) throw PreconditionError("cloud is empty");
  if (h.arity() != cloud.arity)
    throw PreconditionError("coefficient vector arity mismatch");
  CloudDistance res;
  for (std::size_t i = 0; i < cloud.members.size(); ++i) {
    mpq_class d = coef_distance(cloud.members[i], h);
    if (res.nearest < 0 || d < res.distance) {
      res.distance = d;
      res.nearest = static_cast<int>(i);
    }
  }
  res.within_radius = res.distance <= radius;
  return res;
}

}  // namespace circ
