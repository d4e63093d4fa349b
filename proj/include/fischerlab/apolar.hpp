#pragma once

#include <cmath>
#include <cstddef>
#include <map>

#include "fischerlab/errors.hpp"
#include "fischerlab/multi_index.hpp"
#include "fischerlab/polynomial.hpp"
#include "fischerlab/scalar.hpp"

namespace fischerlab {

/// Diagonal Gram matrix of the monomial basis of H_m: <z^a, z^a>_a = a!.
struct ApolarScale {
  std::size_t dim = 0;
  std::size_t degree = 0;
  std::map<MultiIndex, Integer, GradedLexOrder> weights;
};

inline ApolarScale apolar_scale(std::size_t dim, std::size_t m) {
  ApolarScale s{dim, m, {}};
  for (const auto& alpha : monomials_of_degree(dim, m)) s.weights.emplace(alpha, alpha.factorial());
  return s;
}

/// <P, Q>_a = (Q*(D) P)(0) = sum_a a! c_a conj(d_a). Linear in P, conjugate-linear in Q.
inline ComplexRational apolar_inner(const Polynomial& p, const Polynomial& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch(p.dim(), q.dim());
  const bool p_smaller = p.size() <= q.size();
  const Polynomial& small = p_smaller ? p : q;
  const Polynomial& large = p_smaller ? q : p;
  ComplexRational acc;
  for (const auto& [alpha, c] : small.terms()) {
    auto it = large.terms().find(alpha);
    if (it == large.terms().end()) continue;
    const ComplexRational& pc = p_smaller ? c : it->second;
    const ComplexRational& qc = p_smaller ? it->second : c;
    acc += pc * qc.conj() * Rational(alpha.factorial());
  }
  return acc;
}

/// ||f||_a^2 = sum_a a! |c_a|^2, kept squared so it stays exact.
inline Rational apolar_norm_sq(const Polynomial& f) {
  Rational acc = 0;
  for (const auto& [alpha, c] : f.terms()) acc += c.norm_sq() * Rational(alpha.factorial());
  return acc;
}

struct AdjointCheck {
  ComplexRational lhs;       // <Q*(D) f, g>_a
  ComplexRational rhs;       // <f, Q g>_a
  ComplexRational residual;  // lhs - rhs
  bool holds = false;
};

/// Evaluates both sides of <Q*(D) f, g>_a = <f, Q g>_a exactly.
inline AdjointCheck verify_adjoint(const Polynomial& f, const Polynomial& g, const Polynomial& q) {
  AdjointCheck out;
  out.lhs = apolar_inner(apply_operator(conjugate_coefficients(q), f), g);
  out.rhs = apolar_inner(f, q * g);
  out.residual = out.lhs - out.rhs;
  out.holds = out.residual.is_zero();
  return out;
}

/// Certified rational upper bound on sum_{|a|=k} |c_a| sqrt(a!).
inline Rational coefficient_root_sum_upper(const Polynomial& p) {
  Rational s = 0;
  for (const auto& [alpha, c] : p.terms()) s += certified_sqrt_upper(Rational(c.norm_sq() * Rational(alpha.factorial())));
  return s;
}

/// Squared right-hand side of ||P f_m||_a <= ||f_m||_a (1+m)^{k/2} sum |c_a| sqrt(a!).
///
/// The irrational sum is replaced by a certified rational upper bound, so
/// apolar_norm_sq(P * f_m) <= result is a genuine certificate whenever it holds.
inline Rational beauzamy_bound(const Polynomial& p, const Polynomial& f_m) {
  if (p.dim() != f_m.dim()) throw DimensionMismatch(p.dim(), f_m.dim());
  if (!p.is_homogeneous() || !f_m.is_homogeneous()) throw DomainError("beauzamy_bound expects homogeneous inputs");
  if (p.is_zero() || f_m.is_zero()) return Rational(0);
  const auto k = *p.degree();
  const auto m = *f_m.degree();
  Integer growth;
  mpz_ui_pow_ui(growth.get_mpz_t(), m + 1, k);
  const Rational s = coefficient_root_sum_upper(p);
  return Rational(apolar_norm_sq(f_m) * Rational(growth) * s * s);
}

/// ||f_m||_a / (sqrt((m+d-1)!) * sup_est): the ratio whose supremum is the dimensional constant C_d.
inline double lemma17_ratio(const Polynomial& f_m, double sup_est) {
  if (!(sup_est > 0.0)) throw DomainError("sup estimate must be positive");
  if (f_m.is_zero()) throw DomainError("lemma17_ratio is undefined for the zero polynomial");
  if (!f_m.is_homogeneous()) throw DomainError("lemma17_ratio expects a homogeneous polynomial");
  const double m = static_cast<double>(*f_m.degree());
  const double d = static_cast<double>(f_m.dim());
  const double log_ratio = 0.5 * log_abs(apolar_norm_sq(f_m)) - 0.5 * std::lgamma(m + d) - std::log(sup_est);
  return std::exp(log_ratio);
}

}  // namespace fischerlab
