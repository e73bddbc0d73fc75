#include "circ/domain.hpp"

#include <algorithm>

#include "circ/errors.hpp"

namespace circ {

int domain_r(const ParameterDomain& d) {
  return std::visit([](const auto& v) { return v.r; }, d);
}

ParameterDomain affine_domain(int r) { return AffineSpace{r}; }

namespace {

Scalar draw_coord(Rng& rng, const SampleOptions& opt) {
  long p = rng.uniform_int(-opt.bound, opt.bound);
  if (opt.denom_bound <= 1) return Scalar(p);
  long q = rng.uniform_int(1, opt.denom_bound);
  return Scalar(p, q);
}

std::vector<Scalar> draw_vector(int n, Rng& rng, const SampleOptions& opt) {
  std::vector<Scalar> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) v.push_back(draw_coord(rng, opt));
  return v;
}

}  // namespace

std::optional<SolvedForm> solve_generators(const std::vector<SparsePoly>& gens, int r) {
  // Pick, for each usable generator, a variable it is linear in; then order
  // the resulting definitions so that every definition only uses variables
  // defined before it (or free ones).
  std::vector<char> solved(r, 0);
  std::vector<char> used(gens.size(), 0);
  struct RawStep {
    int var;
    SparsePoly coef, rest;
  };
  std::vector<RawStep> raw;

  auto split_linear = [&](const SparsePoly& g, int v) -> std::optional<RawStep> {
    if (g.degree_in(v) != 1) return std::nullopt;
    SparsePoly coef(g.arity()), rest(g.arity());
    for (const auto& [e, c] : g.terms()) {
      if (e[v] == 1) {
        SparsePoly::Exp ce = e;
        ce[v] = 0;
        coef.add_term(ce, c);
      } else {
        rest.add_term(e, c);
      }
    }
    return RawStep{v, coef, rest};
  };

  bool progress = true;
  std::size_t remaining = 0;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    if (gens[gi].is_zero())
      used[gi] = 1;  // the zero generator constrains nothing
    else
      ++remaining;
  }
  while (remaining > 0 && progress) {
    progress = false;
    for (std::size_t gi = 0; gi < gens.size() && !progress; ++gi) {
      if (used[gi]) continue;
      for (int v = 0; v < r && !progress; ++v) {
        if (solved[v]) continue;
        if (auto st = split_linear(gens[gi], v)) {
          raw.push_back(std::move(*st));
          solved[v] = 1;
          used[gi] = 1;
          --remaining;
          progress = true;
        }
      }
    }
  }
  if (remaining > 0) return std::nullopt;

  // Topological order over definitions; a dependency cycle means the set is
  // outside the supported class.
  auto uses = [&](const RawStep& s, int v) {
    return s.coef.degree_in(v) > 0 || s.rest.degree_in(v) > 0;
  };
  std::vector<int> order;
  std::vector<char> placed(raw.size(), 0);
  for (std::size_t round = 0; round < raw.size(); ++round) {
    int pick = -1;
    for (std::size_t i = 0; i < raw.size() && pick < 0; ++i) {
      if (placed[i]) continue;
      bool blocked = false;
      for (std::size_t j = 0; j < raw.size() && !blocked; ++j)
        if (!placed[j] && j != i && uses(raw[i], raw[j].var)) blocked = true;
      if (!blocked) pick = static_cast<int>(i);
    }
    if (pick < 0) return std::nullopt;
    placed[pick] = 1;
    order.push_back(pick);
  }

  SolvedForm sf;
  for (int i : order) sf.steps.push_back({raw[i].var, raw[i].coef, raw[i].rest});
  for (int v = 0; v < r; ++v)
    if (!solved[v]) sf.free_vars.push_back(v);
  return sf;
}

std::vector<RatFunc> solved_images(const SolvedForm& sf, int r) {
  std::vector<RatFunc> images;
  images.reserve(r);
  for (int v = 0; v < r; ++v) images.push_back(RatFunc::variable(r, v));
  for (const auto& st : sf.steps) {
    RatFunc coef = RatFunc(st.coef).substitute(images);
    RatFunc rest = RatFunc(st.rest).substitute(images);
    if (coef.is_zero())
      throw DomainSampleError(DomainSampleError::Kind::EmptyDomainSuspected,
                              "defining coefficient vanishes under the other constraints");
    images[st.var] = -rest / coef;
  }
  return images;
}

std::vector<Scalar> sample_point(const ParameterDomain& d, Rng& rng,
                                 const SampleOptions& opt) {
  if (std::holds_alternative<AffineSpace>(d))
    return draw_vector(std::get<AffineSpace>(d).r, rng, opt);

  if (std::holds_alternative<ImageDomain>(d)) {
    const auto& im = std::get<ImageDomain>(d);
    std::vector<Scalar> src = draw_vector(im.source_dim, rng, opt);
    std::vector<Scalar> out;
    out.reserve(im.r);
    for (const auto& p : im.map) out.push_back(p.eval(src));
    return out;
  }

  const auto& loc = std::get<Localized>(d);
  auto sf = solve_generators(loc.generators, loc.r);
  if (!sf)
    throw DomainSampleError(DomainSampleError::Kind::Unsupported,
                            "generator set is outside the solvable class");
  std::vector<RatFunc> images = solved_images(*sf, loc.r);

  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    std::vector<Scalar> probe(loc.r, Scalar(0));
    for (int v : sf->free_vars) probe[v] = draw_coord(rng, opt);
    std::vector<Scalar> point(loc.r);
    bool ok = true;
    for (int v = 0; v < loc.r && ok; ++v) {
      try {
        point[v] = images[v].eval(probe);
      } catch (const Error&) {
        ok = false;  // hit a pole of a defining fraction; try another draw
      }
    }
    if (!ok) continue;
    for (const auto& g : loc.generators)
      if (!g.eval(point).is_zero())
        throw Error("internal: solved form does not satisfy its generators");
    if (loc.inequation.eval(point).is_zero()) continue;
    return point;
  }
  throw DomainSampleError(DomainSampleError::Kind::EmptyDomainSuspected,
                          "no admissible point found; domain may be empty");
}

}  // namespace circ
