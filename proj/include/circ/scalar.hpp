#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace circ {

// Exact field scalar: an arbitrary-precision rational with an optional
// Gaussian (rational-imaginary) part. All arithmetic is exact; equality is
// exact equality of canonical forms. Division by zero throws.
//
// Serialized form is "p/q" for real values ("p" when q == 1) and
// "p/q+r/s i" / "p/q-r/s i" when the imaginary part is nonzero.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
  Scalar(long num, long den);
  explicit Scalar(const mpz_class& v) : re_(v), im_(0) {}
  explicit Scalar(const mpq_class& re) : re_(re), im_(0) { canon_(); }
  Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) { canon_(); }

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar from_string(const std::string& s);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const { return is_real() && re_.get_den() == 1; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order (re, then im) used only for deterministic sorting.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  Scalar pow(unsigned long e) const;

  // max(|re|, |im|): an exact nonnegative rational used as deviation metric.
  mpq_class abs_bound() const;

  std::string str() const;

  std::size_t hash() const;

 private:
  void canon_() {
    re_.canonicalize();
    im_.canonicalize();
  }

  mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace circ
