#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "fischerlab/errors.hpp"

namespace fischerlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact Gaussian rational re + im*i.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(int re) : re_(re) {}   // NOLINT(google-explicit-constructor)

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const noexcept { return re_; }
  const Rational& imag() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  ComplexRational conj() const { return {re_, Rational(-im_)}; }

  /// |z|^2, exact.
  Rational norm_sq() const { return Rational(re_ * re_ + im_ * im_); }

  ComplexRational& operator+=(const ComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  ComplexRational& operator*=(const Rational& s) {
    re_ *= s;
    im_ *= s;
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    const Rational den = o.norm_sq();
    Rational re = (re_ * o.re_ + im_ * o.im_) / den;
    Rational im = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator*(ComplexRational a, const Rational& s) { return a *= s; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
    return os << '(' << z.re_ << ',' << z.im_ << ')';
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// n! / (n-k)! for k <= n.
inline Integer falling_factorial(unsigned long n, unsigned long k) {
  Integer r = 1;
  for (unsigned long j = 0; j < k; ++j) r *= n - j;
  return r;
}

/// Natural log of a positive integer, valid far beyond the double range.
inline double log_abs(const Integer& n) {
  if (sgn(n) == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

/// Natural log of |q|; -inf for zero.
inline double log_abs(const Rational& q) { return log_abs(Integer(q.get_num())) - log_abs(Integer(q.get_den())); }

/// Canonical "p/q" string (q > 0, reduced; q is always printed).
inline std::string rational_string(Rational q) {
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p" or "p/q". Throws DomainError on malformed input or a zero denominator.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto well_formed = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!well_formed(num, true) || !well_formed(den, false)) throw DomainError("malformed rational '" + text + "'");
  Integer n(num[0] == '+' ? num.substr(1) : num, 10);
  Integer d(den, 10);
  if (sgn(d) == 0) throw DomainError("zero denominator in rational '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Exact rational from a finite double (every finite double is a dyadic rational).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  Rational q(x);
  return q;
}

/// Smallest-effort certified upper bound u >= sqrt(x) with u rational and
/// relative excess below 2^-precision_bits.
inline Rational certified_sqrt_upper(const Rational& x, unsigned precision_bits = 64) {
  if (sgn(x) < 0) throw DomainError("square root of a negative rational");
  if (sgn(x) == 0) return Rational(0);
  // sqrt(p/q) = sqrt(p*q)/q; scale by 2^(2*bits) before the integer root.
  Integer scaled = Integer(x.get_num() * x.get_den());
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * precision_bits);
  Integer root;
  Integer rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t());
  if (sgn(rem) != 0) root += 1;
  Integer den = x.get_den();
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision_bits);
  Rational u(root, den);
  u.canonicalize();
  return u;
}

}  // namespace fischerlab
