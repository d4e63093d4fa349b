#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "fischerlab/errors.hpp"
#include "fischerlab/polynomial.hpp"
#include "fischerlab/scalar.hpp"

namespace fischerlab {

namespace detail {

// Recursive descent over
//   expr     := [sign] term (("+" | "-") term)*
//   term     := factor ("*" factor)*
//   factor   := rational ["i"] | "i" | var ["^" uint] | "(" expr ")"
//   var      := "z" uint
//   rational := uint ["/" uint]
// Whitespace is skipped between tokens. A leading sign is accepted so that
// printed polynomials with a negative first term parse back.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Integer uint_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an unsigned integer");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'i') {
      ++pos_;
      return Polynomial::constant(dim_, ComplexRational::i());
    }
    if (c == 'z') {
      const std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a variable index after 'z'");
      const Integer idx = uint_literal();
      if (idx < 1 || idx > dim_) {
        pos_ = at;
        fail("variable index out of range for dimension " + std::to_string(dim_));
      }
      MultiIndex alpha(dim_);
      unsigned long power = 1;
      if (accept('^')) {
        const Integer e = uint_literal();
        if (!e.fits_uint_p()) fail("exponent too large");
        power = e.get_ui();
      }
      alpha[idx.get_ui() - 1] = static_cast<MultiIndex::value_type>(power);
      return Polynomial::monomial(alpha);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const Integer num = uint_literal();
      Integer den = 1;
      if (accept('/')) {
        const std::size_t at = pos_;
        den = uint_literal();
        if (sgn(den) == 0) {
          pos_ = at;
          fail("division by zero in rational literal");
        }
      }
      Rational q(num, den);
      q.canonicalize();
      if (accept('i')) return Polynomial::constant(dim_, ComplexRational(Rational(0), q));
      return Polynomial::constant(dim_, ComplexRational(q));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

inline std::string monomial_string(const MultiIndex& alpha) {
  std::string out;
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    if (alpha[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'z' + std::to_string(i + 1);
    if (alpha[i] > 1) out += '^' + std::to_string(alpha[i]);
  }
  return out;
}

}  // namespace detail

/// Parses a polynomial in z1..z{dim}; throws ParseError carrying the byte offset.
inline Polynomial parse_expression(std::string_view text, std::size_t dim) {
  if (dim == 0) throw DomainError("dimension must be positive");
  return detail::ExpressionParser(text, dim).parse();
}

/// Canonical text form, terms in graded-lex order.
///
/// Real coefficients print as signed rationals ("3/2*z1^2", "- z2"), purely
/// imaginary ones as "2 i*z1", and general ones parenthesized as "(a + b i)"
/// or "(a - b i)". The zero polynomial prints as "0".
inline std::string print_expression(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [alpha, c] : p.terms()) {
    const std::string mono = detail::monomial_string(alpha);
    bool negative = false;
    std::string coef;
    if (c.is_real() || sgn(c.real()) == 0) {
      const bool imaginary = !c.is_real();
      Rational mag = imaginary ? c.imag() : c.real();
      negative = sgn(mag) < 0;
      mag = abs(mag);
      if (imaginary)
        coef = mag == 1 ? "i" : mag.get_str() + " i";
      else if (mag != 1 || mono.empty())
        coef = mag.get_str();
    } else {
      const Rational im = c.imag();
      coef = "(" + c.real().get_str() + (sgn(im) < 0 ? " - " : " + ") + Rational(abs(im)).get_str() + " i)";
    }
    std::string body = coef;
    if (!mono.empty()) body = coef.empty() ? mono : coef + "*" + mono;
    if (first)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace fischerlab
