#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "circ/rng.hpp"
#include "circ/scalar.hpp"
#include "circ/sparse_poly.hpp"

using circ::Rng;
using circ::Scalar;
using circ::SparsePoly;

namespace {

SparsePoly random_poly(Rng& rng, int arity, int terms) {
  SparsePoly p(arity);
  for (int t = 0; t < terms; ++t) {
    SparsePoly::Exp e(arity);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng.uniform_int(0, 3));
    p.add_term(e, Scalar(rng.uniform_int(-9, 9), rng.uniform_int(1, 4)));
  }
  return p;
}

std::vector<Scalar> random_point(Rng& rng, int arity) {
  std::vector<Scalar> pt(arity);
  for (auto& c : pt) c = Scalar(rng.uniform_int(-7, 7), rng.uniform_int(1, 3));
  return pt;
}

}  // namespace

TEST_CASE("constructors and basic queries") {
  SparsePoly z(3);
  CHECK(z.is_zero());
  CHECK(z.arity() == 3);
  CHECK(z.total_degree() == -1);

  SparsePoly c = SparsePoly::constant(2, Scalar(5));
  CHECK(c.is_constant());
  CHECK(c.constant_value() == Scalar(5));

  SparsePoly x = SparsePoly::variable(2, 0);
  SparsePoly y = SparsePoly::variable(2, 1);
  CHECK(x.total_degree() == 1);
  CHECK(x.degree_in(0) == 1);
  CHECK(x.degree_in(1) == 0);
  CHECK((x * y).coef({1, 1}) == Scalar(1));
}

TEST_CASE("zero coefficients are dropped") {
  SparsePoly x = SparsePoly::variable(1, 0);
  SparsePoly d = x - x;
  CHECK(d.is_zero());
  CHECK(d.term_count() == 0);
  SparsePoly p(1);
  p.add_term({2}, Scalar(3));
  p.add_term({2}, Scalar(-3));
  CHECK(p.is_zero());
}

TEST_CASE("ring identities on random polynomials") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const int arity = static_cast<int>(rng.uniform_int(1, 3));
    SparsePoly a = random_poly(rng, arity, 4);
    SparsePoly b = random_poly(rng, arity, 4);
    SparsePoly c = random_poly(rng, arity, 3);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == SparsePoly(arity));

    auto pt = random_point(rng, arity);
    CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
    CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
  }
}

TEST_CASE("pow matches repeated multiplication") {
  Rng rng(11);
  SparsePoly a = random_poly(rng, 2, 3);
  SparsePoly acc = SparsePoly::constant(2, Scalar(1));
  for (unsigned e = 0; e <= 4; ++e) {
    CHECK(a.pow(e) == acc);
    acc = acc * a;
  }
}

TEST_CASE("univariate coefficient access") {
  // (x - 1)(x - 2)(x - 3) = x^3 - 6x^2 + 11x - 6
  SparsePoly x = SparsePoly::variable(1, 0);
  auto lin = [&](long r) { return x - SparsePoly::constant(1, Scalar(r)); };
  SparsePoly p = lin(1) * lin(2) * lin(3);
  CHECK(p.degree1() == 3);
  CHECK(p.coef1(3) == Scalar(1));
  CHECK(p.coef1(2) == Scalar(-6));
  CHECK(p.coef1(1) == Scalar(11));
  CHECK(p.coef1(0) == Scalar(-6));
  CHECK(p.coef1(4) == Scalar(0));
}

TEST_CASE("substitution composes evaluations") {
  Rng rng(77);
  SparsePoly p = random_poly(rng, 2, 5);
  std::vector<SparsePoly> images = {random_poly(rng, 3, 3), random_poly(rng, 3, 3)};
  SparsePoly q = p.substitute(images);
  auto pt = random_point(rng, 3);
  CHECK(q.eval(pt) == p.eval({images[0].eval(pt), images[1].eval(pt)}));
}

TEST_CASE("remap embeds variables into a larger ring") {
  SparsePoly p = SparsePoly::variable(2, 0) * SparsePoly::variable(2, 1);
  SparsePoly q = p.remap_vars(4, {3, 1});
  CHECK(q.arity() == 4);
  CHECK(q.coef({0, 1, 0, 1}) == Scalar(1));
  CHECK(q.eval({Scalar(9), Scalar(2), Scalar(9), Scalar(5)}) == Scalar(10));
}

TEST_CASE("exact division recovers the cofactor") {
  Rng rng(303);
  int successes = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int arity = static_cast<int>(rng.uniform_int(1, 3));
    SparsePoly a = random_poly(rng, arity, 3);
    SparsePoly b = random_poly(rng, arity, 3);
    if (b.is_zero()) continue;
    auto q = (a * b).divide_exact(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    ++successes;
  }
  CHECK(successes >= 15);
}

TEST_CASE("inexact division is reported") {
  SparsePoly x = SparsePoly::variable(1, 0);
  SparsePoly num = x * x + SparsePoly::constant(1, Scalar(1));
  CHECK_FALSE(num.divide_exact(x).has_value());
  SparsePoly xy = SparsePoly::variable(2, 0) + SparsePoly::variable(2, 1);
  CHECK_FALSE((xy * xy + SparsePoly::constant(2, Scalar(3)))
                  .divide_exact(xy)
                  .has_value());
}

TEST_CASE("monomial factor extraction") {
  SparsePoly x = SparsePoly::variable(2, 0);
  SparsePoly y = SparsePoly::variable(2, 1);
  SparsePoly p = x * x * y + x * y * y;  // common factor xy
  auto m = p.exponent_min();
  CHECK(m == SparsePoly::Exp{1, 1});
  CHECK(p.divide_monomial(m) == x + y);
}

TEST_CASE("eval_generic reproduces direct evaluation over Scalar") {
  Rng rng(404);
  SparsePoly p = random_poly(rng, 2, 5);
  auto pt = random_point(rng, 2);
  Scalar got = p.eval_generic<Scalar>(pt, Scalar(0), Scalar(1),
                                      [](const Scalar& c) { return c; });
  CHECK(got == p.eval(pt));
}
