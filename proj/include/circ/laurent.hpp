#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "circ/errors.hpp"
#include "circ/scalar.hpp"
#include "circ/sparse_poly.hpp"

namespace circ {

template <class C>
struct SeriesCoef;

template <>
struct SeriesCoef<Scalar> {
  static bool is_zero(const Scalar& c) { return c.is_zero(); }
  static Scalar zero_like(const Scalar&) { return Scalar(0); }
  static std::optional<Scalar> div(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
  }
};

template <>
struct SeriesCoef<SparsePoly> {
  static bool is_zero(const SparsePoly& c) { return c.is_zero(); }
  static SparsePoly zero_like(const SparsePoly& proto) { return SparsePoly(proto.arity()); }
  static std::optional<SparsePoly> div(const SparsePoly& a, const SparsePoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return SeriesCoef<SparsePoly>::zero_like(a);
    return a.divide_exact(b);
  }
};

// Truncated Laurent series in one formal variable ("eps") with coefficients in
// C (exact scalars, or polynomials for symbolic inputs).
//
// Precision model: a value represents some series that is *fully determined*
// for all exponents k < known(). Stored coefficients cover
// [order(), order()+stored()); exponents from there up to known() are exactly
// zero; exponents >= known() are unknown. Exact values (constants, polynomial
// germs) use the sentinel known() == kExact and behave like untruncated
// series.
//
// Arithmetic tracks what remains determined:
//   sum:      known = min(known_a, known_b)
//   product:  known = min(known_a + order_b, known_b + order_a)
//   quotient: known = min(known_a, known_b + order_a - order_b) - order_b
// Dividing by a value that is indistinguishable from zero at its current
// precision throws PrecisionExhausted; dividing by an exact zero is an Error.
template <class C>
class TruncatedLaurent {
 public:
  static constexpr long kExact = 1L << 40;

  explicit TruncatedLaurent(const C& proto)
      : proto_(SeriesCoef<C>::zero_like(proto)), lead_(0), known_(kExact) {}

  static TruncatedLaurent make(const C& proto, long order, std::vector<C> coeffs,
                               long known) {
    TruncatedLaurent s{SeriesCoef<C>::zero_like(proto)};
    s.lead_ = order;
    s.c_ = std::move(coeffs);
    s.known_ = known;
    s.normalize_();
    return s;
  }

  static TruncatedLaurent exact(const C& proto, long order, std::vector<C> coeffs) {
    return make(proto, order, std::move(coeffs), kExact);
  }

  static TruncatedLaurent constant(const C& value) {
    return exact(value, 0, {value});
  }

  bool is_zero() const { return c_.empty(); }  // zero as far as determined
  bool is_exact() const { return known_ == kExact; }
  long known() const { return known_; }
  long order() const {
    if (c_.empty()) throw PreconditionError("zero series has no order");
    return lead_;
  }
  std::size_t stored() const { return c_.size(); }
  const C& proto() const { return proto_; }

  // Coefficient of eps^k; requires k < known().
  C coef_at(long k) const {
    if (k >= known_) throw PrecisionExhausted("coefficient beyond tracked precision");
    if (c_.empty() || k < lead_ || k >= lead_ + static_cast<long>(c_.size()))
      return proto_;
    return c_[static_cast<std::size_t>(k - lead_)];
  }

  friend TruncatedLaurent operator+(const TruncatedLaurent& a, const TruncatedLaurent& b) {
    long known = std::min(a.known_, b.known_);
    if (a.c_.empty() && b.c_.empty()) return make(a.proto_, 0, {}, known);
    // Coefficients outside both stored windows are zero as far as `known`
    // reaches, so only the union of the stored windows needs materializing.
    long lo, hi;
    if (a.c_.empty()) {
      lo = b.lead_;
      hi = b.high_();
    } else if (b.c_.empty()) {
      lo = a.lead_;
      hi = a.high_();
    } else {
      lo = std::min(a.lead_, b.lead_);
      hi = std::max(a.high_(), b.high_());
    }
    hi = std::min(hi, known);
    std::vector<C> out;
    for (long k = lo; k < hi; ++k) out.push_back(a.at_(k) + b.at_(k));
    return make(a.proto_, lo, std::move(out), known);
  }

  friend TruncatedLaurent operator-(const TruncatedLaurent& a, const TruncatedLaurent& b) {
    return a + b.negated();
  }

  TruncatedLaurent& operator+=(const TruncatedLaurent& o) { return *this = *this + o; }
  TruncatedLaurent& operator-=(const TruncatedLaurent& o) { return *this = *this - o; }
  TruncatedLaurent& operator*=(const TruncatedLaurent& o) { return *this = *this * o; }

  TruncatedLaurent negated() const {
    TruncatedLaurent out = *this;
    for (C& c : out.c_) c = proto_ - c;  // 0 - c
    return out;
  }

  friend TruncatedLaurent operator*(const TruncatedLaurent& a, const TruncatedLaurent& b) {
    if (a.c_.empty() || b.c_.empty()) {
      // Zero (to current knowledge) times anything: zero up to what the zero
      // factor guarantees, shifted by the other factor's order.
      long known;
      if (a.c_.empty() && b.c_.empty())
        known = sat_add_(a.known_, b.known_);
      else if (a.c_.empty())
        known = sat_add_(a.known_, b.lead_);
      else
        known = sat_add_(b.known_, a.lead_);
      return make(a.proto_, known, {}, known);
    }
    long known = std::min(sat_add_(a.known_, b.lead_), sat_add_(b.known_, a.lead_));
    long lo = a.lead_ + b.lead_;
    long hi = std::min(lo + static_cast<long>(a.c_.size() + b.c_.size()) - 1, known);
    std::vector<C> out(static_cast<std::size_t>(std::max(hi - lo, 0L)),
                       a.proto_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (SeriesCoef<C>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        long k = lo + static_cast<long>(i + j);
        if (k >= hi) break;
        out[static_cast<std::size_t>(k - lo)] += a.c_[i] * b.c_[j];
      }
    }
    return make(a.proto_, lo, std::move(out), known);
  }

  friend TruncatedLaurent operator/(const TruncatedLaurent& a, const TruncatedLaurent& b) {
    if (b.c_.empty()) {
      if (b.is_exact()) throw Error("series division by exact zero");
      throw PrecisionExhausted(
          "division by a series indistinguishable from zero at current precision");
    }
    if (a.c_.empty()) {
      long known = a.is_exact() ? kExact : sat_add_(a.known_, -b.lead_);
      return make(a.proto_, known, {}, known);
    }
    long qlead = a.lead_ - b.lead_;
    long known = std::min(sat_add_(a.known_, -b.lead_),
                          sat_add_(b.known_, qlead - b.lead_));
    long len = known == kExact
                   ? static_cast<long>(a.c_.size())  // exact inputs: window of a
                   : known - qlead;
    std::vector<C> q(static_cast<std::size_t>(std::max(len, 0L)), a.proto_);
    // Long division: peel one quotient coefficient at a time. The remainder
    // buffer extends past the quotient window so that exact division can spot
    // a nonvanishing residue.
    std::vector<C> rem(a.c_);
    rem.resize(static_cast<std::size_t>(std::max(len, 0L)) + b.c_.size() + 1, a.proto_);
    for (long j = 0; j < len; ++j) {
      auto d = SeriesCoef<C>::div(rem[static_cast<std::size_t>(j)], b.c_.front());
      if (!d) throw Error("series division: leading coefficient not invertible");
      q[static_cast<std::size_t>(j)] = *d;
      if (SeriesCoef<C>::is_zero(*d)) continue;
      for (std::size_t t = 0; t < b.c_.size(); ++t) {
        std::size_t idx = static_cast<std::size_t>(j) + t;
        if (idx >= rem.size()) break;
        rem[idx] = rem[idx] - *d * b.c_[t];
      }
    }
    TruncatedLaurent out = make(a.proto_, qlead, std::move(q), known);
    if (known == kExact && !out.c_.empty()) {
      // Exact operands only divide exactly when the remainder vanished.
      for (std::size_t t = static_cast<std::size_t>(len); t < rem.size(); ++t)
        if (!SeriesCoef<C>::is_zero(rem[t]))
          throw Error("series division: exact operands do not divide evenly");
    }
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (SeriesCoef<C>::is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << str_coef_(c_[i]) << ")*eps^" << lead_ + static_cast<long>(i);
    }
    if (first) os << "0";
    if (known_ != kExact) os << " + O(eps^" << known_ << ")";
    return os.str();
  }

 private:
  static long sat_add_(long a, long b) {
    if (a >= kExact || b >= kExact) return kExact;
    long s = a + b;
    return s >= kExact ? kExact : s;
  }

  // One past the last stored index; meaningful only when c_ is nonempty.
  long high_() const { return lead_ + static_cast<long>(c_.size()); }
  C at_(long k) const {
    if (c_.empty() || k < lead_ || k >= high_()) return proto_;
    return c_[static_cast<std::size_t>(k - lead_)];
  }

  static std::string str_coef_(const Scalar& c) { return c.str(); }
  static std::string str_coef_(const SparsePoly& c) { return c.str(); }

  void normalize_() {
    if (known_ != kExact && static_cast<long>(c_.size()) > known_ - lead_)
      c_.resize(static_cast<std::size_t>(std::max(known_ - lead_, 0L)));
    std::size_t skip = 0;
    while (skip < c_.size() && SeriesCoef<C>::is_zero(c_[skip])) ++skip;
    if (skip > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(skip));
      lead_ += static_cast<long>(skip);
    }
    while (!c_.empty() && SeriesCoef<C>::is_zero(c_.back())) c_.pop_back();
    if (c_.empty()) lead_ = known_;
  }

  C proto_;
  long lead_;
  std::vector<C> c_;
  long known_;
};

using ScalarSeries = TruncatedLaurent<Scalar>;
using PolySeries = TruncatedLaurent<SparsePoly>;

}  // namespace circ
