#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "circ/rat_func.hpp"
#include "circ/rng.hpp"
#include "circ/sparse_poly.hpp"

namespace circ {

struct AffineSpace {
  int r = 0;
};

// Zero set of `generators` inside affine r-space, localized away from the
// hypersurface inequation == 0: points with inequation(u) == 0 do not belong.
struct Localized {
  int r = 0;
  std::vector<SparsePoly> generators;  // arity r
  SparsePoly inequation;               // arity r, never identically zero
};

// Image of affine source space under a polynomial map; one polynomial of
// arity source_dim per target coordinate.
struct ImageDomain {
  int r = 0;
  int source_dim = 0;
  std::vector<SparsePoly> map;
};

using ParameterDomain = std::variant<AffineSpace, Localized, ImageDomain>;

int domain_r(const ParameterDomain& d);
ParameterDomain affine_domain(int r);

struct SampleOptions {
  long bound = 65536;    // coordinates drawn from integers in [-bound, bound]
  long denom_bound = 1;  // > 1 draws rationals p/q with q up to denom_bound
  int max_attempts = 64;
};

// Seeded rational-point sampling. Image domains sample the source space and
// push forward; Localized domains go through the solved form below. Throws
// DomainSampleError when the constraint set is unsupported or every attempt
// fell on the excluded hypersurface (an empty domain would look like this).
std::vector<Scalar> sample_point(const ParameterDomain& d, Rng& rng,
                                 const SampleOptions& opt = {});

// Solved form of a generator set: each generator is degree <= 1 in the
// variable it gets to define, the definitions are acyclic, and the zero set is
// therefore the graph of rational expressions over the free variables. This is
// the class of constraint sets supported by the sampler and by exact
// consistency checking; anything richer is reported as unsupported rather
// than guessed at.
struct SolvedForm {
  struct Step {
    int var;          // variable defined by this step
    SparsePoly coef;  // coefficient of `var` in the generator
    SparsePoly rest;  // generator - coef*var, so var = -rest/coef
  };
  std::vector<Step> steps;  // topologically ordered: later steps may use
                            // earlier-defined variables, never the converse
  std::vector<int> free_vars;
};

std::optional<SolvedForm> solve_generators(const std::vector<SparsePoly>& gens, int r);

// Substitution images realizing a solved form over the free variables:
// images[v] is v itself for free variables and the fully substituted defining
// fraction for solved ones. Throws DomainSampleError(EmptyDomainSuspected)
// when a defining coefficient collapses to zero under the earlier definitions.
std::vector<RatFunc> solved_images(const SolvedForm& sf, int r);

}  // namespace circ
