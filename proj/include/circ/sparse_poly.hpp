#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circ/scalar.hpp"

namespace circ {

// Multivariate polynomial with exact Scalar coefficients, stored sparsely as
// exponent vector -> nonzero coefficient. The exponent map is ordered
// lexicographically, which gives deterministic iteration and a well-defined
// leading term; exact division below relies on both.
//
// The arity (number of variables) is fixed per value and must agree between
// operands; exponent vectors always have exactly `arity` entries.
class SparsePoly {
 public:
  using Exp = std::vector<std::uint32_t>;
  using TermMap = std::map<Exp, Scalar>;

  explicit SparsePoly(int arity = 0) : arity_(arity) {}

  static SparsePoly constant(int arity, const Scalar& c);
  static SparsePoly variable(int arity, int var);  // 0-based variable index
  static SparsePoly monomial(int arity, const Exp& e, const Scalar& c);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_value() const;  // 0 for the zero polynomial
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  long total_degree() const;
  long degree_in(int var) const;

  // Coefficient of a full exponent vector (0 if absent).
  Scalar coef(const Exp& e) const;
  // Univariate convenience: coefficient of x^k (arity must be 1).
  Scalar coef1(std::uint32_t k) const;
  long degree1() const;  // -1 for zero

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  SparsePoly scaled(const Scalar& c) const;
  SparsePoly pow(unsigned e) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

  Scalar eval(const std::vector<Scalar>& point) const;

  // Substitution: variable i becomes images[i]. R is any commutative ring
  // value type with +=, *, and an embedding of Scalar provided by `embed`.
  template <class R, class Embed>
  R eval_generic(const std::vector<R>& images, const R& zero, const R& one,
                 Embed embed) const {
    std::vector<std::vector<R>> pw(arity_);
    for (int i = 0; i < arity_; ++i) pw[i].push_back(one);
    R acc = zero;
    for (const auto& [e, c] : terms_) {
      R term = embed(c);
      for (int i = 0; i < arity_; ++i) {
        if (e[i] == 0) continue;
        auto& p = pw[i];
        while (p.size() <= e[i]) p.push_back(p.back() * images[i]);
        term = term * p[e[i]];
      }
      acc += term;
    }
    return acc;
  }

  SparsePoly substitute(const std::vector<SparsePoly>& images) const;

  // Reinterpret over a wider/narrower variable list: variable i of *this
  // becomes variable var_map[i] of the result. Useful for embedding a
  // parameter-space polynomial into a combined parameter+input ring.
  SparsePoly remap_vars(int new_arity, const std::vector<int>& var_map) const;

  // Largest exponent vector in lex order; polynomial must be nonzero.
  const std::pair<const Exp, Scalar>& leading_term() const;

  // Componentwise minimum of all exponent vectors (the common monomial factor).
  Exp exponent_min() const;
  SparsePoly divide_monomial(const Exp& e) const;

  // Exact division: returns the quotient iff divisor divides *this exactly.
  std::optional<SparsePoly> divide_exact(const SparsePoly& divisor) const;

  std::string str(const std::vector<std::string>& names = {}) const;

  void add_term(const Exp& e, const Scalar& c);  // accumulate, dropping zeros

 private:
  int arity_;
  TermMap terms_;
};

}  // namespace circ
