#include "circ/sparse_poly.hpp"

#include <algorithm>
#include <sstream>

#include "circ/errors.hpp"

namespace circ {

namespace {

void require_same_arity(const SparsePoly& a, const SparsePoly& b) {
  if (a.arity() != b.arity())
    throw PreconditionError("polynomial arity mismatch: " + std::to_string(a.arity()) +
                            " vs " + std::to_string(b.arity()));
}

}  // namespace

SparsePoly SparsePoly::constant(int arity, const Scalar& c) {
  SparsePoly p(arity);
  p.add_term(Exp(arity, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(int arity, int var) {
  if (var < 0 || var >= arity) throw PreconditionError("variable index out of range");
  SparsePoly p(arity);
  Exp e(arity, 0);
  e[var] = 1;
  p.add_term(e, Scalar(1));
  return p;
}

SparsePoly SparsePoly::monomial(int arity, const Exp& e, const Scalar& c) {
  if (static_cast<int>(e.size()) != arity)
    throw PreconditionError("monomial exponent length mismatch");
  SparsePoly p(arity);
  p.add_term(e, c);
  return p;
}

bool SparsePoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exp& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t v) { return v == 0; });
}

Scalar SparsePoly::constant_value() const {
  if (!is_constant()) throw PreconditionError("polynomial is not constant");
  return terms_.empty() ? Scalar(0) : terms_.begin()->second;
}

long SparsePoly::total_degree() const {
  long best = -1;  // -1 for the zero polynomial, matching degree1
  for (const auto& [e, c] : terms_) {
    long d = 0;
    for (auto v : e) d += v;
    best = std::max(best, d);
  }
  return best;
}

long SparsePoly::degree_in(int var) const {
  long best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<long>(e[var]));
  return best;
}

Scalar SparsePoly::coef(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar SparsePoly::coef1(std::uint32_t k) const {
  if (arity_ != 1) throw PreconditionError("coef1 requires a univariate polynomial");
  return coef(Exp{k});
}

long SparsePoly::degree1() const {
  if (arity_ != 1) throw PreconditionError("degree1 requires a univariate polynomial");
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.rbegin()->first[0]);
}

void SparsePoly::add_term(const Exp& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out(arity_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  require_same_arity(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  require_same_arity(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  require_same_arity(a, b);
  SparsePoly out(a.arity_);
  SparsePoly::Exp e(a.arity_, 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

SparsePoly SparsePoly::scaled(const Scalar& c) const {
  SparsePoly out(arity_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly acc = constant(arity_, Scalar(1));
  SparsePoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Scalar SparsePoly::eval(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != arity_)
    throw PreconditionError("evaluation point arity mismatch");
  return eval_generic<Scalar>(point, Scalar(0), Scalar(1),
                              [](const Scalar& c) { return c; });
}

SparsePoly SparsePoly::substitute(const std::vector<SparsePoly>& images) const {
  if (static_cast<int>(images.size()) != arity_)
    throw PreconditionError("substitution image count mismatch");
  int out_arity = images.empty() ? 0 : images.front().arity();
  return eval_generic<SparsePoly>(
      images, SparsePoly(out_arity), constant(out_arity, Scalar(1)),
      [&](const Scalar& c) { return constant(out_arity, c); });
}

SparsePoly SparsePoly::remap_vars(int new_arity, const std::vector<int>& var_map) const {
  if (static_cast<int>(var_map.size()) != arity_)
    throw PreconditionError("variable map length mismatch");
  SparsePoly out(new_arity);
  for (const auto& [e, c] : terms_) {
    Exp ne(new_arity, 0);
    for (int i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      int t = var_map[i];
      if (t < 0 || t >= new_arity)
        throw PreconditionError("variable map target out of range");
      ne[t] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

const std::pair<const SparsePoly::Exp, Scalar>& SparsePoly::leading_term() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return *terms_.rbegin();
}

SparsePoly::Exp SparsePoly::exponent_min() const {
  if (terms_.empty()) return Exp(arity_, 0);
  Exp m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < arity_; ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

SparsePoly SparsePoly::divide_monomial(const Exp& e) const {
  SparsePoly out(arity_);
  for (const auto& [t, c] : terms_) {
    Exp ne(arity_);
    for (int i = 0; i < arity_; ++i) {
      if (t[i] < e[i]) throw PreconditionError("monomial does not divide polynomial");
      ne[i] = t[i] - e[i];
    }
    out.terms_.emplace(ne, c);
  }
  return out;
}

std::optional<SparsePoly> SparsePoly::divide_exact(const SparsePoly& divisor) const {
  require_same_arity(*this, divisor);
  if (divisor.is_zero()) return std::nullopt;
  SparsePoly rem = *this;
  SparsePoly quot(arity_);
  const auto& [de, dc] = divisor.leading_term();
  while (!rem.is_zero()) {
    const auto& [re, rc] = rem.leading_term();
    Exp qe(arity_);
    for (int i = 0; i < arity_; ++i) {
      if (re[i] < de[i]) return std::nullopt;
      qe[i] = re[i] - de[i];
    }
    SparsePoly t = monomial(arity_, qe, rc / dc);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

std::string SparsePoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.str();
    for (int i = 0; i < arity_; ++i) {
      if (it->first[i] == 0) continue;
      os << "*";
      if (static_cast<int>(names.size()) > i)
        os << names[i];
      else
        os << "x" << i;
      if (it->first[i] > 1) os << "^" << it->first[i];
    }
  }
  return os.str();
}

}  // namespace circ
