#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fischerlab/errors.hpp"
#include "fischerlab/multi_index.hpp"
#include "fischerlab/scalar.hpp"

namespace fischerlab {

/// Sparse polynomial in z_1, ..., z_d with Gaussian-rational coefficients.
///
/// Terms are kept in GradedLexOrder and zero coefficients are never stored,
/// so two polynomials are equal exactly when their term maps are equal.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, ComplexRational, GradedLexOrder>;

  explicit Polynomial(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw DomainError("polynomial dimension must be positive");
  }

  static Polynomial constant(std::size_t dim, const ComplexRational& c) {
    Polynomial p(dim);
    p.add_term(MultiIndex(dim), c);
    return p;
  }

  static Polynomial monomial(const MultiIndex& alpha, const ComplexRational& c = 1) {
    Polynomial p(alpha.dim());
    p.add_term(alpha, c);
    return p;
  }

  /// z_{i+1} (0-based i).
  static Polynomial variable(std::size_t dim, std::size_t i) { return monomial(MultiIndex::unit(dim, i)); }

  std::size_t dim() const noexcept { return dim_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; std::nullopt stands for the degree of the zero polynomial (minus infinity).
  std::optional<std::size_t> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();
  }

  /// Lowest total degree among the stored terms; nullopt for zero.
  std::optional<std::size_t> low_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.degree();
  }

  ComplexRational coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? ComplexRational{} : it->second;
  }

  /// Accumulates c into the coefficient of z^alpha.
  void add_term(const MultiIndex& alpha, const ComplexRational& c) {
    if (alpha.dim() != dim_) throw DimensionMismatch(dim_, alpha.dim());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Zero is homogeneous of every degree.
  bool is_homogeneous() const { return is_zero() || *degree() == *low_degree(); }

  /// Degree-m slice f_m.
  Polynomial homogeneous_part(std::size_t m) const {
    Polynomial out(dim_);
    for (const auto& [alpha, c] : terms_)
      if (alpha.degree() == m) out.terms_.emplace_hint(out.terms_.end(), alpha, c);
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
    return *this;
  }
  Polynomial& operator*=(const ComplexRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [alpha, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [alpha, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const ComplexRational& s) { return a *= s; }
  friend Polynomial operator*(const ComplexRational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dim(b);
    Polynomial out(a.dim_);
    for (const auto& [alpha, c] : a.terms_)
      for (const auto& [beta, e] : b.terms_) out.add_term(alpha + beta, c * e);
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void check_dim(const Polynomial& o) const {
    if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
  }

  std::size_t dim_;
  TermMap terms_;
};

inline Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }
inline Polynomial multiply(const Polynomial& f, const Polynomial& g) { return f * g; }

/// P*: coefficients replaced by their complex conjugates.
inline Polynomial conjugate_coefficients(const Polynomial& p) {
  Polynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) out.add_term(alpha, c.conj());
  return out;
}

/// Q(D)f: each z_i of Q acts as d/dz_i, so D^alpha z^beta = beta!/(beta-alpha)! z^(beta-alpha).
inline Polynomial apply_operator(const Polynomial& q, const Polynomial& f) {
  if (q.dim() != f.dim()) throw DimensionMismatch(q.dim(), f.dim());
  Polynomial out(f.dim());
  for (const auto& [alpha, a] : q.terms()) {
    for (const auto& [beta, b] : f.terms()) {
      if (!alpha.divides(beta)) continue;
      Integer scale = 1;
      for (std::size_t i = 0; i < alpha.dim(); ++i) scale *= falling_factorial(beta[i], alpha[i]);
      out.add_term(beta - alpha, a * b * Rational(scale));
    }
  }
  return out;
}

/// Value at the origin (the constant coefficient).
inline ComplexRational value_at_zero(const Polynomial& f) { return f.coefficient(MultiIndex(f.dim())); }

/// f = sum_{m <= truncation} f_m with f_m homogeneous of degree m.
struct GradedSeries {
  std::size_t dim = 1;
  std::vector<Polynomial> slices;

  GradedSeries(std::size_t d, std::size_t truncation) : dim(d), slices(truncation + 1, Polynomial(d)) {}

  std::size_t truncation() const { return slices.size() - 1; }

  const Polynomial& slice(std::size_t m) const { return slices.at(m); }

  /// Sum of all slices.
  Polynomial to_polynomial() const {
    Polynomial out(dim);
    for (const auto& s : slices) out += s;
    return out;
  }

  /// Sum of slices of degree <= m.
  Polynomial truncated(std::size_t m) const {
    Polynomial out(dim);
    for (std::size_t n = 0; n <= m && n < slices.size(); ++n) out += slices[n];
    return out;
  }

  /// Checks every slice is homogeneous of its index.
  void validate() const {
    for (std::size_t m = 0; m < slices.size(); ++m) {
      const auto& s = slices[m];
      if (s.dim() != dim) throw DimensionMismatch(dim, s.dim());
      if (!s.is_zero() && (*s.degree() != m || !s.is_homogeneous()))
        throw DomainError("slice " + std::to_string(m) + " is not homogeneous of degree " + std::to_string(m));
    }
  }
};

/// Splits f into its homogeneous slices; truncation = deg f (0 for the zero polynomial).
inline GradedSeries homogeneous_expansion(const Polynomial& f) {
  GradedSeries out(f.dim(), f.degree().value_or(0));
  for (const auto& [alpha, c] : f.terms()) out.slices[alpha.degree()].add_term(alpha, c);
  return out;
}

/// Series expansion with a given truncation; terms above it are dropped.
inline GradedSeries homogeneous_expansion(const Polynomial& f, std::size_t truncation) {
  GradedSeries out(f.dim(), truncation);
  for (const auto& [alpha, c] : f.terms())
    if (alpha.degree() <= truncation) out.slices[alpha.degree()].add_term(alpha, c);
  return out;
}

/// Degree-n slice of P*phi, sum over beta of P_beta * phi_{n-beta}.
inline Polynomial graded_product_slice(const Polynomial& p, const GradedSeries& phi, std::size_t n) {
  if (p.dim() != phi.dim) throw DimensionMismatch(p.dim(), phi.dim);
  const std::size_t deg_p = p.degree().value_or(0);
  if (n > phi.truncation() + deg_p) throw DomainError("requested slice exceeds truncation plus deg P");
  Polynomial out(p.dim());
  for (std::size_t beta = 0; beta <= deg_p && beta <= n; ++beta) {
    const std::size_t m = n - beta;
    if (m > phi.truncation()) continue;
    const Polynomial pb = p.homogeneous_part(beta);
    if (pb.is_zero() || phi.slices[m].is_zero()) continue;
    out += pb * phi.slices[m];
  }
  return out;
}

}  // namespace fischerlab
