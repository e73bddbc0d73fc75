#pragma once

#include <string>

#include "circ/sparse_poly.hpp"

namespace circ {

// Quotient of two SparsePoly values over the same variable list. Kept lightly
// normalized rather than fully reduced: full multivariate gcd is out of scope,
// so equality tests use cross multiplication instead of canonical forms.
//
// Normalization applied after every operation:
//   * zero numerator  -> denominator 1
//   * constant denominator -> folded into the numerator
//   * common monomial factor of num and den -> cancelled
//   * denominator dividing the numerator exactly -> quotient kept as polynomial
class RatFunc {
 public:
  explicit RatFunc(int arity = 0)
      : num_(SparsePoly(arity)), den_(SparsePoly::constant(arity, Scalar(1))) {}
  explicit RatFunc(const SparsePoly& num) : num_(num), den_(one_like(num)) {}
  RatFunc(const SparsePoly& num, const SparsePoly& den);

  static RatFunc constant(int arity, const Scalar& c) {
    return RatFunc(SparsePoly::constant(arity, c));
  }
  static RatFunc variable(int arity, int var) {
    return RatFunc(SparsePoly::variable(arity, var));
  }

  int arity() const { return num_.arity(); }
  const SparsePoly& num() const { return num_; }
  const SparsePoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  std::size_t term_count() const { return num_.term_count() + den_.term_count(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);  // throws on /0
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }

  // Exact equality as rational functions (cross multiplied).
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // Throws circ::Error when the denominator vanishes at the point.
  Scalar eval(const std::vector<Scalar>& point) const;

  RatFunc substitute(const std::vector<RatFunc>& images) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  static SparsePoly one_like(const SparsePoly& p) {
    return SparsePoly::constant(p.arity(), Scalar(1));
  }
  void normalize_();

  SparsePoly num_, den_;
};

// Whether num/den, read as a polynomial fraction in the variables with index
// >= split and coefficients in the fraction field of the first `split`
// variables, is actually a polynomial in those trailing variables. Decided
// exactly by pseudo-division (single divisor over a coefficient field), with
// no gcd machinery.
bool is_polynomial_in_suffix(const SparsePoly& num, const SparsePoly& den, int split);

}  // namespace circ
