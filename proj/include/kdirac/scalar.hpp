#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kdirac {

/// Exact element of Q(i): a complex number with rational real and imaginary
/// parts held in arbitrary precision.  Both parts are kept canonical (lowest
/// terms, positive denominator), so equality is plain component comparison
/// and serialized output is reproducible bit for bit.
class Scalar {
public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}
  Scalar(const mpq_class& re, const mpq_class& im = mpq_class(0)) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// Build from raw numerator/denominator pairs; canonicalizes.
  static Scalar from_parts(long re_num, long re_den, long im_num, long im_den) {
    if (re_den == 0 || im_den == 0) throw std::domain_error("Scalar: zero denominator");
    return Scalar(mpq_class(re_num, re_den), mpq_class(im_num, im_den));
  }

  /// The imaginary unit.
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  mpz_class re_num() const { return re_.get_num(); }
  mpz_class re_den() const { return re_.get_den(); }
  mpz_class im_num() const { return im_.get_num(); }
  mpz_class im_den() const { return im_.get_den(); }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// True for 1, -1, i, -i: the entries whose pivots cost nothing to divide by.
  bool is_unit_entry() const {
    if (sgn(im_) == 0) return re_ == 1 || re_ == -1;
    if (sgn(re_) == 0) return im_ == 1 || im_ == -1;
    return false;
  }

  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (sgn(o.im_) == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text form "a/b+c/d i" (or "a/b-c/d i" for negative imaginary
  /// part); used by the matrix cache and the reports.
  std::string str() const {
    std::string s = re_.get_num().get_str() + "/" + re_.get_den().get_str();
    mpz_class in = im_.get_num();
    if (sgn(in) < 0) {
      s += "-" + mpz_class(-in).get_str();
    } else {
      s += "+" + in.get_str();
    }
    s += "/" + im_.get_den().get_str() + " i";
    return s;
  }

  /// Inverse of str(); throws std::invalid_argument on malformed input.
  static Scalar parse(const std::string& s) {
    auto bad = [&]() -> Scalar { throw std::invalid_argument("Scalar: cannot parse '" + s + "'"); };
    if (s.size() < 2 || s.substr(s.size() - 2) != " i") return bad();
    std::string body = s.substr(0, s.size() - 2);
    size_t slash1 = body.find('/');
    if (slash1 == std::string::npos) return bad();
    size_t sep = body.find_first_of("+-", slash1 + 1);
    if (sep == std::string::npos) return bad();
    std::string re_part = body.substr(0, sep);
    std::string im_part = body.substr(sep);  // keeps the sign
    if (!im_part.empty() && im_part[0] == '+') im_part.erase(0, 1);
    try {
      mpq_class re(re_part), im(im_part);
      return Scalar(re, im);
    } catch (const std::invalid_argument&) {
      return bad();
    }
  }

private:
  mpq_class re_, im_;
};

}  // namespace kdirac
