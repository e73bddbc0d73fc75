#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "circ/domain.hpp"
#include "circ/errors.hpp"

using namespace circ;

namespace {

SparsePoly var(int arity, int v) { return SparsePoly::variable(arity, v); }
SparsePoly cst(int arity, long c) { return SparsePoly::constant(arity, Scalar(c)); }

Localized localized(int r, std::vector<SparsePoly> gens) {
  Localized d;
  d.r = r;
  d.generators = std::move(gens);
  d.inequation = cst(r, 1);
  return d;
}

}  // namespace

TEST_CASE("affine sampling stays within the requested box") {
  Rng rng(42);
  SampleOptions opt;
  opt.bound = 10;
  for (int t = 0; t < 50; ++t) {
    auto pt = sample_point(affine_domain(3), rng, opt);
    REQUIRE(pt.size() == 3);
    for (const Scalar& c : pt) {
      CHECK(c.is_integer());
      CHECK(c.abs_bound() <= 10);
    }
  }
  CHECK(domain_r(affine_domain(3)) == 3);
}

TEST_CASE("rational sampling honors the denominator bound") {
  Rng rng(43);
  SampleOptions opt;
  opt.bound = 5;
  opt.denom_bound = 3;
  bool saw_fraction = false;
  for (int t = 0; t < 60; ++t) {
    auto pt = sample_point(affine_domain(2), rng, opt);
    for (const Scalar& c : pt) {
      CHECK(c.re().get_den() <= 3);
      if (!c.is_integer()) saw_fraction = true;
    }
  }
  CHECK(saw_fraction);
}

TEST_CASE("single-variable constraints pin coordinates") {
  Rng rng(44);
  SUBCASE("u1 = 0") {
    auto d = localized(2, {var(2, 0)});
    for (int t = 0; t < 10; ++t) {
      auto pt = sample_point(d, rng);
      CHECK(pt[0] == Scalar(0));
    }
  }
  SUBCASE("u1 = 3") {
    auto d = localized(1, {var(1, 0) - cst(1, 3)});
    auto pt = sample_point(d, rng);
    CHECK(pt[0] == Scalar(3));
  }
}

TEST_CASE("linear relations between coordinates hold on samples") {
  Rng rng(45);
  auto d = localized(2, {var(2, 0) - var(2, 1)});  // u1 = u2
  bool varies = false;
  Scalar first;
  for (int t = 0; t < 20; ++t) {
    auto pt = sample_point(d, rng);
    CHECK(pt[0] == pt[1]);
    if (t == 0) first = pt[0];
    if (pt[0] != first) varies = true;
  }
  CHECK(varies);  // the free coordinate actually moves
}

TEST_CASE("product constraints solve through a rational graph") {
  Rng rng(46);
  // u1*u2 - 1 = 0: hyperbola, u2 = 1/u1 where u1 != 0.
  auto d = localized(2, {var(2, 0) * var(2, 1) - cst(2, 1)});
  for (int t = 0; t < 20; ++t) {
    auto pt = sample_point(d, rng);
    CHECK(pt[0] * pt[1] == Scalar(1));
  }
}

TEST_CASE("triangular systems substitute in order") {
  Rng rng(47);
  // u1 = 2, u2 = u1^2  ->  (2, 4)
  auto d = localized(2, {var(2, 0) - cst(2, 2), var(2, 1) - var(2, 0) * var(2, 0)});
  auto pt = sample_point(d, rng);
  CHECK(pt[0] == Scalar(2));
  CHECK(pt[1] == Scalar(4));
}

TEST_CASE("solved forms expose definitions and free variables") {
  auto sf = solve_generators({var(3, 1) - var(3, 0) * var(3, 0)}, 3);
  REQUIRE(sf.has_value());
  REQUIRE(sf->steps.size() == 1);
  CHECK(sf->steps[0].var == 1);
  CHECK(sf->free_vars == std::vector<int>{0, 2});

  auto images = solved_images(*sf, 3);
  REQUIRE(images.size() == 3);
  CHECK(images[1] == RatFunc(var(3, 0) * var(3, 0)));
  CHECK(images[0] == RatFunc(var(3, 0)));
}

TEST_CASE("unsolvable generator sets are rejected, not guessed") {
  SUBCASE("quadratic in every variable") {
    auto sf = solve_generators({var(1, 0) * var(1, 0) - cst(1, 2)}, 1);
    CHECK_FALSE(sf.has_value());
    Rng rng(48);
    auto d = localized(1, {var(1, 0) * var(1, 0) - cst(1, 2)});
    CHECK_THROWS_AS(sample_point(d, rng), DomainSampleError);
  }
  SUBCASE("two generators competing for one variable") {
    // u1 = 1 and u1 = 2: the second generator has no variable left to define.
    auto sf = solve_generators({var(1, 0) - cst(1, 1), var(1, 0) - cst(1, 2)}, 1);
    CHECK_FALSE(sf.has_value());
  }
}

TEST_CASE("image domains push forward source samples") {
  Rng rng(49);
  ImageDomain d;
  d.r = 2;
  d.source_dim = 1;
  d.map = {var(1, 0) * var(1, 0), var(1, 0) * var(1, 0) * var(1, 0)};  // (s^2, s^3)
  for (int t = 0; t < 20; ++t) {
    auto pt = sample_point(d, rng);
    REQUIRE(pt.size() == 2);
    CHECK(pt[1] * pt[1] == pt[0] * pt[0] * pt[0]);  // y^2 = x^3 on the cusp
  }
  CHECK(domain_r(d) == 2);
}

TEST_CASE("inequations exclude the hypersurface") {
  Rng rng(50);
  Localized d;
  d.r = 1;
  d.inequation = var(1, 0);  // u1 != 0
  SampleOptions opt;
  opt.bound = 2;  // small box to make hitting zero likely without the filter
  for (int t = 0; t < 60; ++t) {
    auto pt = sample_point(d, rng, opt);
    CHECK_FALSE(pt[0].is_zero());
  }
}

TEST_CASE("contradictory localization looks like an empty domain") {
  Rng rng(51);
  // u1 = 0 as a generator while excluding u1 == 0.
  Localized d;
  d.r = 1;
  d.generators = {var(1, 0)};
  d.inequation = var(1, 0);
  CHECK_THROWS_AS(sample_point(d, rng), DomainSampleError);
  try {
    sample_point(d, rng);
  } catch (const DomainSampleError& e) {
    CHECK(e.kind == DomainSampleError::Kind::EmptyDomainSuspected);
  }
}

TEST_CASE("degenerate defining coefficient is caught during substitution") {
  // u1 = 0 followed by u1*u2 = 1: after substituting u1 := 0 the second
  // generator's coefficient of u2 collapses to zero.
  auto sf = solve_generators({var(2, 0), var(2, 0) * var(2, 1) - cst(2, 1)}, 2);
  if (sf.has_value()) {
    CHECK_THROWS_AS(solved_images(*sf, 2), DomainSampleError);
  }
}
