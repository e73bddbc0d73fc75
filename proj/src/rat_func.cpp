#include "circ/rat_func.hpp"

#include <algorithm>

#include "circ/errors.hpp"

namespace circ {

RatFunc::RatFunc(const SparsePoly& num, const SparsePoly& den) : num_(num), den_(den) {
  if (num_.arity() != den_.arity())
    throw PreconditionError("rational function arity mismatch");
  normalize_();
}

void RatFunc::normalize_() {
  if (den_.is_zero()) throw Error("rational function: zero denominator");
  if (num_.is_zero()) {
    den_ = one_like(num_);
    return;
  }
  SparsePoly::Exp gn = num_.exponent_min();
  SparsePoly::Exp gd = den_.exponent_min();
  SparsePoly::Exp g(gn.size());
  bool any = false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = std::min(gn[i], gd[i]);
    any = any || g[i] > 0;
  }
  if (any) {
    num_ = num_.divide_monomial(g);
    den_ = den_.divide_monomial(g);
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(Scalar(1) / den_.constant_value());
    den_ = one_like(num_);
    return;
  }
  if (auto q = num_.divide_exact(den_)) {
    num_ = *q;
    den_ = one_like(num_);
    return;
  }
  const Scalar& lc = den_.leading_term().second;
  if (!lc.is_one()) {
    Scalar inv = Scalar(1) / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc out(arity());
  out.num_ = -num_;
  out.den_ = den_;
  return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error("division by identically zero function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

Scalar RatFunc::eval(const std::vector<Scalar>& point) const {
  Scalar d = den_.eval(point);
  if (d.is_zero()) throw Error("rational function pole at evaluation point");
  return num_.eval(point) / d;
}

RatFunc RatFunc::substitute(const std::vector<RatFunc>& images) const {
  if (static_cast<int>(images.size()) != arity())
    throw PreconditionError("substitution image count mismatch");
  int m = images.empty() ? 0 : images.front().arity();
  RatFunc zero(m);
  RatFunc one = RatFunc::constant(m, Scalar(1));
  auto embed = [&](const Scalar& c) { return RatFunc::constant(m, c); };
  RatFunc n = num_.eval_generic<RatFunc>(images, zero, one, embed);
  RatFunc d = den_.eval_generic<RatFunc>(images, zero, one, embed);
  return n / d;
}

std::string RatFunc::str(const std::vector<std::string>& names) const {
  if (is_polynomial()) return num_.str(names);
  return "(" + num_.str(names) + ") / (" + den_.str(names) + ")";
}

namespace {

SparsePoly::Exp suffix_of(const SparsePoly::Exp& e, int split) {
  return SparsePoly::Exp(e.begin() + split, e.end());
}

struct SuffixLead {
  SparsePoly::Exp se;
  SparsePoly coef;  // full arity, suffix exponents cleared
};

SuffixLead suffix_lead(const SparsePoly& p, int split) {
  const int arity = p.arity();
  SparsePoly::Exp best;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    SparsePoly::Exp s = suffix_of(e, split);
    if (first || s > best) {
      best = s;
      first = false;
    }
  }
  SparsePoly coef(arity);
  for (const auto& [e, c] : p.terms()) {
    if (suffix_of(e, split) != best) continue;
    SparsePoly::Exp pe = e;
    for (int i = split; i < arity; ++i) pe[i] = 0;
    coef.add_term(pe, c);
  }
  return {best, coef};
}

}  // namespace

bool is_polynomial_in_suffix(const SparsePoly& num, const SparsePoly& den, int split) {
  if (num.arity() != den.arity()) throw PreconditionError("arity mismatch");
  if (den.is_zero()) throw PreconditionError("zero denominator");
  if (num.is_zero()) return true;
  const int arity = num.arity();
  if (split < 0 || split > arity) throw PreconditionError("bad split index");
  bool den_free = true;
  for (int v = split; v < arity && den_free; ++v) den_free = den.degree_in(v) == 0;
  if (den_free) return true;

  // Pseudo-division by a single divisor: valid as a divisibility test because
  // the leading coefficient we multiply by is a unit of the coefficient field.
  SuffixLead dl = suffix_lead(den, split);
  SparsePoly rem = num;
  for (long guard = 0; !rem.is_zero(); ++guard) {
    if (guard > 20000) throw BudgetExceeded("polynomiality test did not settle");
    SuffixLead rl = suffix_lead(rem, split);
    SparsePoly::Exp qfull(arity, 0);
    for (int i = 0; i < arity - split; ++i) {
      if (rl.se[i] < dl.se[i]) return false;
      qfull[split + i] = rl.se[i] - dl.se[i];
    }
    SparsePoly t = SparsePoly::monomial(arity, qfull, Scalar(1)) * rl.coef * den;
    rem = rem * dl.coef - t;
  }
  return true;
}

}  // namespace circ
