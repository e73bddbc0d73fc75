#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "circ/errors.hpp"
#include "circ/rat_func.hpp"
#include "circ/rng.hpp"

using circ::RatFunc;
using circ::Rng;
using circ::Scalar;
using circ::SparsePoly;

namespace {

SparsePoly var(int arity, int v) { return SparsePoly::variable(arity, v); }
SparsePoly cst(int arity, long c) { return SparsePoly::constant(arity, Scalar(c)); }

RatFunc random_rf(Rng& rng, int arity) {
  SparsePoly num(arity), den(arity);
  for (int t = 0; t < 3; ++t) {
    SparsePoly::Exp e(arity);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng.uniform_int(0, 2));
    num.add_term(e, Scalar(rng.uniform_int(-5, 5)));
    for (auto& x : e) x = static_cast<std::uint32_t>(rng.uniform_int(0, 2));
    den.add_term(e, Scalar(rng.uniform_int(-5, 5)));
  }
  if (den.is_zero()) den = cst(arity, 1);
  return RatFunc(num, den);
}

}  // namespace

TEST_CASE("normalization") {
  SparsePoly x = var(1, 0);

  SUBCASE("zero numerator resets the denominator") {
    RatFunc r(SparsePoly(1), x);
    CHECK(r.is_zero());
    CHECK(r.den().is_constant());
  }
  SUBCASE("constant denominators fold into the numerator") {
    RatFunc r(x + cst(1, 1), cst(1, 2));
    CHECK(r.is_polynomial());
    CHECK(r.num().coef1(1) == Scalar(1, 2));
    CHECK(r.num().coef1(0) == Scalar(1, 2));
  }
  SUBCASE("common monomial factors cancel") {
    RatFunc r(x * x, x);  // x^2 / x
    CHECK(r.is_polynomial());
    CHECK(r.num() == x);
  }
  SUBCASE("exact polynomial quotients collapse") {
    RatFunc r((x + cst(1, 1)) * (x - cst(1, 1)), x + cst(1, 1));
    CHECK(r.is_polynomial());
    CHECK(r.num() == x - cst(1, 1));
  }
  SUBCASE("zero denominator is rejected") {
    CHECK_THROWS_AS(RatFunc(x, SparsePoly(1)), circ::Error);
  }
}

TEST_CASE("field identities on random fractions") {
  Rng rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    const int arity = static_cast<int>(rng.uniform_int(1, 2));
    RatFunc a = random_rf(rng, arity);
    RatFunc b = random_rf(rng, arity);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == RatFunc(arity));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
  }
}

TEST_CASE("equality is cross multiplied, not syntactic") {
  SparsePoly x = var(2, 0), y = var(2, 1);
  RatFunc a(x, y);
  RatFunc b(x * x, x * y);  // same function where defined
  CHECK(a == b);
  CHECK(a != RatFunc(y, x));
}

TEST_CASE("evaluation and definedness") {
  SparsePoly x = var(1, 0);
  RatFunc r(cst(1, 1), x - cst(1, 3));  // 1 / (x - 3)
  CHECK(r.eval({Scalar(5)}) == Scalar(1, 2));
  CHECK_THROWS_AS(r.eval({Scalar(3)}), circ::Error);
}

TEST_CASE("substitution composes") {
  SparsePoly x = var(1, 0);
  RatFunc r(x, x + cst(1, 1));            // x / (x + 1)
  RatFunc image(cst(1, 1), x);            // 1 / x
  RatFunc s = r.substitute({image});      // (1/x) / (1/x + 1) = 1 / (1 + x)
  CHECK(s == RatFunc(cst(1, 1), x + cst(1, 1)));
}

TEST_CASE("polynomial detection in trailing variables") {
  // Variables: index 0 is a coefficient variable u, index 1 is the main
  // variable x. split = 1 puts x in the suffix.
  SparsePoly u = var(2, 0), x = var(2, 1);

  // (u x^2 + u^2 x) / u = x^2 + u x: polynomial in x.
  CHECK(circ::is_polynomial_in_suffix(u * x * x + u * u * x, u, 1));
  // x / u: still polynomial in x (coefficient 1/u lives in the base field).
  CHECK(circ::is_polynomial_in_suffix(x, u, 1));
  // 1 / x is not a polynomial in x.
  CHECK_FALSE(circ::is_polynomial_in_suffix(cst(2, 1), x, 1));
  // (x^2 + u) / (x + 1): division leaves a nonzero remainder.
  CHECK_FALSE(circ::is_polynomial_in_suffix(x * x + u, x + cst(2, 1), 1));
  // (x^2 - u^2) / (x - u) = x + u: exact.
  CHECK(circ::is_polynomial_in_suffix(x * x - u * u, x - u, 1));
  // Everything in the suffix (split = 0): u x / u is a polynomial.
  CHECK(circ::is_polynomial_in_suffix(u * x, u, 0));
  CHECK_FALSE(circ::is_polynomial_in_suffix(x, u, 0));
}

TEST_CASE("printing keeps the fraction readable") {
  SparsePoly x = var(1, 0);
  RatFunc r(x + cst(1, 1), x - cst(1, 2));
  std::string s = r.str({"x"});
  CHECK(s.find("x") != std::string::npos);
  CHECK(s.find("/") != std::string::npos);
}
