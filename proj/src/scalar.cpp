#include "circ/scalar.hpp"

#include <ostream>
#include <regex>

#include "circ/errors.hpp"

namespace circ {

Scalar::Scalar(long num, long den) : re_(num, den), im_(0) {
  if (den == 0) throw Error("scalar: zero denominator");
  canon_();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = r;
  im_ = i;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error("scalar: division by zero");
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ /= o.re_;
    return *this;
  }
  mpq_class n2 = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n2;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n2;
  re_ = r;
  im_ = i;
  return *this;
}

Scalar Scalar::pow(unsigned long e) const {
  Scalar acc = 1;
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

mpq_class Scalar::abs_bound() const {
  mpq_class ar = abs(re_);
  mpq_class ai = abs(im_);
  return ar > ai ? ar : ai;
}

std::string Scalar::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  mpq_class ai = abs(im_);
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + ai.get_str() + " i";
}

Scalar Scalar::from_string(const std::string& s) {
  static const std::regex pat(
      R"(^\s*(-?\d+(?:/\d+)?)(?:\s*([+-])\s*(\d+(?:/\d+)?)\s*i)?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, pat)) throw ParseError("bad scalar literal: '" + s + "'");
  auto as_q = [](const std::string& t) {
    mpq_class q(t);
    if (sgn(q.get_den()) == 0) throw ParseError("bad scalar literal: zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
  };
  mpq_class re = as_q(m[1].str());
  if (!m[2].matched) return Scalar(re);
  mpq_class im = as_q(m[3].str());
  if (m[2].str() == "-") im = -im;
  return Scalar(re, im);
}

std::size_t Scalar::hash() const {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2));
  };
  auto hz = [&](const mpz_class& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
    std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t k = 0; k < n; ++k)
      h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), k)));
    return h;
  };
  std::size_t h = hz(re_.get_num());
  h = mix(h, hz(re_.get_den()));
  h = mix(h, hz(im_.get_num()));
  h = mix(h, hz(im_.get_den()));
  return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace circ
