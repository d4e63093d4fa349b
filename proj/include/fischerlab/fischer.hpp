#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fischerlab/apolar.hpp"
#include "fischerlab/errors.hpp"
#include "fischerlab/exact_linalg.hpp"
#include "fischerlab/multi_index.hpp"
#include "fischerlab/polynomial.hpp"

namespace fischerlab {

/// Decomposition-relevant shape of P = P_{beta1} + ... + P_{beta2} + P_k.
struct PolynomialStructure {
  std::size_t k = 0;
  bool is_homogeneous = false;
  std::optional<std::size_t> beta1;  // lowest nonzero slice below k
  std::optional<std::size_t> beta2;  // highest nonzero slice below k
  std::set<std::size_t> gaps;        // E = { j in 1..k : P_{k-j} != 0 }
  std::optional<std::size_t> beta_low;   // min E = k - beta2
  std::optional<std::size_t> beta_high;  // max E = k - beta1
};

inline PolynomialStructure analyze_structure(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("analyze_structure: P is the zero polynomial");
  PolynomialStructure s;
  s.k = *p.degree();
  if (s.k == 0) throw DomainError("analyze_structure: P is constant");
  for (std::size_t n = 0; n < s.k; ++n) {
    if (p.homogeneous_part(n).is_zero()) continue;
    if (!s.beta1) s.beta1 = n;
    s.beta2 = n;
    s.gaps.insert(s.k - n);
  }
  s.is_homogeneous = s.gaps.empty();
  if (!s.is_homogeneous) {
    s.beta_low = *s.gaps.begin();
    s.beta_high = *s.gaps.rbegin();
  }
  return s;
}

/// Principal part P_k.
inline Polynomial principal_part(const Polynomial& p) { return p.homogeneous_part(p.degree().value_or(0)); }

/// F_{QP}(phi) = Q(D)(P phi).
inline Polynomial fischer_operator(const Polynomial& p, const Polynomial& q, const Polynomial& phi) {
  if (p.dim() != q.dim()) throw DimensionMismatch(p.dim(), q.dim());
  return apply_operator(q, p * phi);
}

struct FischerDecomposition {
  Polynomial q;
  Polynomial r;
  bool residual_check = false;        // P_k*(D) r == 0
  bool reconstruction_check = false;  // f - P q - r == 0
};

namespace detail {

inline std::map<MultiIndex, std::size_t, GradedLexOrder> index_of(const std::vector<MultiIndex>& basis) {
  std::map<MultiIndex, std::size_t, GradedLexOrder> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

inline std::vector<ComplexRational> coordinates(const Polynomial& f, const std::vector<MultiIndex>& basis) {
  const auto idx = index_of(basis);
  std::vector<ComplexRational> x(basis.size());
  for (const auto& [alpha, c] : f.terms()) {
    auto it = idx.find(alpha);
    if (it == idx.end()) throw TheoremViolation("term outside the expected homogeneous space");
    x[it->second] = c;
  }
  return x;
}

inline Polynomial from_coordinates(std::size_t dim, const std::vector<MultiIndex>& basis,
                                   const std::vector<ComplexRational>& x) {
  Polynomial out(dim);
  for (std::size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], x[i]);
  return out;
}

// Matrix of g -> op(g) from H_src into H_dst in monomial coordinates.
template <class Op>
ExactMatrix block_matrix(const std::vector<MultiIndex>& src, const std::vector<MultiIndex>& dst, Op&& op) {
  const auto idx = index_of(dst);
  ExactMatrix a(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Polynomial image = op(Polynomial::monomial(src[j]));
    for (const auto& [alpha, c] : image.terms()) {
      auto it = idx.find(alpha);
      if (it == idx.end()) throw TheoremViolation("block image leaves its target degree");
      a(it->second, j) = c;
    }
  }
  return a;
}

// Independent recomputation of both verification flags.
inline void certify(FischerDecomposition& d, const Polynomial& f, const Polynomial& p) {
  d.reconstruction_check = (f - p * d.q - d.r).is_zero();
  d.residual_check = apply_operator(conjugate_coefficients(principal_part(p)), d.r).is_zero();
  if (!d.reconstruction_check || !d.residual_check)
    throw TheoremViolation("decomposition failed its exact verification");
}

}  // namespace detail

/// Exact decomposition f_m = P q + r with P*(D) r = 0 for homogeneous P.
///
/// Solves the Hermitian positive definite normal system
/// <P q, P e_j>_a = <f_m, P e_j>_a over the monomial basis e_j of H_{m-k}.
inline FischerDecomposition decompose_homogeneous(const Polynomial& f_m, const Polynomial& p) {
  if (f_m.dim() != p.dim()) throw DimensionMismatch(f_m.dim(), p.dim());
  if (p.is_zero()) throw DomainError("decompose_homogeneous: P is zero");
  if (!p.is_homogeneous()) throw DomainError("decompose_homogeneous: P is not homogeneous");
  if (!f_m.is_homogeneous()) throw DomainError("decompose_homogeneous: f is not homogeneous");
  const std::size_t dim = p.dim();
  const std::size_t k = *p.degree();
  FischerDecomposition out{Polynomial(dim), f_m, false, false};
  if (!f_m.is_zero() && *f_m.degree() >= k) {
    const auto basis = monomials_of_degree(dim, *f_m.degree() - k);
    std::vector<Polynomial> images;
    images.reserve(basis.size());
    for (const auto& e : basis) images.push_back(p * Polynomial::monomial(e));
    ExactMatrix gram(basis.size(), basis.size());
    std::vector<ComplexRational> rhs(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (std::size_t i = 0; i < basis.size(); ++i) gram(j, i) = apolar_inner(images[i], images[j]);
      rhs[j] = apolar_inner(f_m, images[j]);
    }
    auto x = solve(gram, rhs);
    if (!x) throw TheoremViolation("apolar Gram matrix of P * H_m is singular");
    out.q = detail::from_coordinates(dim, basis, *x);
    out.r = f_m - p * out.q;
  }
  detail::certify(out, f_m, p);
  return out;
}

/// Block-triangular matrix of q -> P_k*(D)(P q) on polynomials of degree <= max_degree.
///
/// diagonal[m] is T_m : H_m -> H_m, q_m -> P_k*(D)(P_k q_m).
/// coupling[{m, j}] is H_{m+j} -> H_m, q -> P_k*(D)(P_{k-j} q), for j in E.
struct GradedFischerMatrix {
  std::size_t dim = 0;
  std::size_t max_degree = 0;
  PolynomialStructure structure;
  std::vector<std::vector<MultiIndex>> bases;
  std::vector<ExactMatrix> diagonal;
  std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> coupling;
};

inline GradedFischerMatrix build_graded_matrix(const Polynomial& p, std::size_t max_degree) {
  GradedFischerMatrix g;
  g.structure = analyze_structure(p);
  g.dim = p.dim();
  g.max_degree = max_degree;
  const Polynomial pk = principal_part(p);
  const Polynomial pk_star = conjugate_coefficients(pk);
  for (std::size_t m = 0; m <= max_degree; ++m) g.bases.push_back(monomials_of_degree(g.dim, m));
  for (std::size_t m = 0; m <= max_degree; ++m) {
    g.diagonal.push_back(detail::block_matrix(g.bases[m], g.bases[m], [&](const Polynomial& e) {
      return apply_operator(pk_star, pk * e);
    }));
  }
  for (const auto j : g.structure.gaps) {
    const Polynomial lower = p.homogeneous_part(g.structure.k - j);
    for (std::size_t m = 0; m + j <= max_degree; ++m) {
      g.coupling.emplace(std::make_pair(m, j), detail::block_matrix(g.bases[m + j], g.bases[m], [&](const Polynomial& e) {
                           return apply_operator(pk_star, lower * e);
                         }));
    }
  }
  return g;
}

/// Exact f = P q + r with P_k*(D) r = 0 by graded back-substitution.
///
/// F(q) = P_k*(D)(P q) never raises degree, and its degree-m output slice is
/// T_m q_m + sum_{j in E} P_k*(D)(P_{k-j} q_{m+j}). Solving from the top
/// degree downward therefore needs only the invertible diagonal blocks.
inline FischerDecomposition decompose(const Polynomial& f, const Polynomial& p) {
  if (f.dim() != p.dim()) throw DimensionMismatch(f.dim(), p.dim());
  const auto s = analyze_structure(p);
  const std::size_t dim = p.dim();
  if (s.is_homogeneous) {
    FischerDecomposition out{Polynomial(dim), Polynomial(dim), false, false};
    const auto slices = homogeneous_expansion(f);
    for (const auto& fm : slices.slices) {
      if (fm.is_zero()) continue;
      auto part = decompose_homogeneous(fm, p);
      out.q += part.q;
      out.r += part.r;
    }
    detail::certify(out, f, p);
    return out;
  }

  FischerDecomposition out{Polynomial(dim), f, false, false};
  if (!f.is_zero() && *f.degree() >= s.k) {
    const std::size_t top = *f.degree() - s.k;
    const auto g = build_graded_matrix(p, top);
    const auto target = homogeneous_expansion(apply_operator(conjugate_coefficients(principal_part(p)), f), top);
    std::vector<std::vector<ComplexRational>> q_coords(top + 1);
    for (std::size_t m = top + 1; m-- > 0;) {
      auto rhs = detail::coordinates(target.slices[m], g.bases[m]);
      for (const auto j : s.gaps) {
        if (m + j > top) continue;
        const auto contrib = g.coupling.at({m, j}).apply(q_coords[m + j]);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= contrib[i];
      }
      auto x = solve(g.diagonal[m], rhs);
      if (!x) throw TheoremViolation("homogeneous Fischer block T_" + std::to_string(m) + " is singular");
      q_coords[m] = std::move(*x);
    }
    for (std::size_t m = 0; m <= top; ++m) out.q += detail::from_coordinates(dim, g.bases[m], q_coords[m]);
    out.r = f - p * out.q;
  }
  detail::certify(out, f, p);
  return out;
}

/// Same decomposition via a single exact solve of the full filtered system.
/// Used to cross-check the graded back-substitution on small instances.
inline FischerDecomposition decompose_global(const Polynomial& f, const Polynomial& p) {
  if (f.dim() != p.dim()) throw DimensionMismatch(f.dim(), p.dim());
  const auto s = analyze_structure(p);
  const std::size_t dim = p.dim();
  FischerDecomposition out{Polynomial(dim), f, false, false};
  if (!f.is_zero() && *f.degree() >= s.k) {
    const std::size_t top = *f.degree() - s.k;
    std::vector<MultiIndex> basis;
    for (std::size_t m = 0; m <= top; ++m)
      for (auto& a : monomials_of_degree(dim, m)) basis.push_back(std::move(a));
    const Polynomial pk_star = conjugate_coefficients(principal_part(p));
    const auto a = detail::block_matrix(basis, basis, [&](const Polynomial& e) { return fischer_operator(p, pk_star, e); });
    const auto rhs = detail::coordinates(apply_operator(pk_star, f), basis);
    auto x = solve(a, rhs);
    if (!x) throw TheoremViolation("filtered Fischer matrix is singular");
    out.q = detail::from_coordinates(dim, basis, *x);
    out.r = f - p * out.q;
  }
  detail::certify(out, f, p);
  return out;
}

struct BlockRank {
  std::size_t degree = 0;
  std::size_t size = 0;
  std::size_t rank = 0;
};

struct InjectivityReport {
  std::vector<BlockRank> blocks;
  bool full_rank = true;
  std::optional<std::size_t> violating_degree;
  std::optional<Polynomial> kernel_witness;  // nonzero q_m with T_m q_m = 0
};

/// Exact ranks of T_m for m <= n. Full rank on every block is equivalent to
/// injectivity of F on polynomials of degree <= n.
inline InjectivityReport injectivity_check(const Polynomial& p, std::size_t n) {
  const auto g = build_graded_matrix(p, n);
  InjectivityReport rep;
  for (std::size_t m = 0; m <= n; ++m) {
    const auto& t = g.diagonal[m];
    const std::size_t r = rank(t);
    rep.blocks.push_back({m, t.cols(), r});
    if (r != t.cols() && rep.full_rank) {
      rep.full_rank = false;
      rep.violating_degree = m;
      rep.kernel_witness = detail::from_coordinates(g.dim, g.bases[m], *kernel_vector(t));
    }
  }
  return rep;
}

struct SeriesDecomposition {
  GradedSeries q;
  GradedSeries r;
  bool residual_check = false;
  bool reconstruction_check = false;
  // Degrees [0, final_through] of q are unaffected by any extension of f beyond
  // the truncation. Empty when P is non-homogeneous: every q_m couples to
  // q_{m+j} for j in E, so no slice is insulated from higher f-slices.
  std::optional<std::size_t> final_through;
};

/// Decomposition of the degree <= truncation part of a graded series.
inline SeriesDecomposition decompose_series(const GradedSeries& f, const Polynomial& p, std::size_t truncation) {
  if (f.dim != p.dim()) throw DimensionMismatch(f.dim, p.dim());
  const auto s = analyze_structure(p);
  if (truncation < s.k) throw DomainError("decompose_series: truncation must be at least deg P");
  f.validate();
  const auto d = decompose(f.truncated(truncation), p);
  SeriesDecomposition out{homogeneous_expansion(d.q, truncation - s.k), homogeneous_expansion(d.r, truncation),
                          d.residual_check, d.reconstruction_check, std::nullopt};
  if (s.is_homogeneous) out.final_through = truncation - s.k;
  return out;
}

struct OrderBound {
  double rho_max = 0.0;
  int branch = 0;             // 1: beta2 - tau >= 0, 2: beta2 - tau < 0
  bool in_expected_range = false;  // branch 1 in [2/k, 2], branch 2 in (2, 2k]
};

/// Largest order for which the uniqueness theorem applies:
/// 2(k-beta2)/(k-tau) if beta2 >= tau, else 2(k-beta1)/(k+beta2-beta1-tau).
inline OrderBound uniqueness_order_bound(std::size_t k, std::size_t beta1, std::size_t beta2, double tau) {
  if (k < 2) throw DomainError("uniqueness_order_bound: k must be at least 2");
  if (beta1 > beta2 || beta2 + 1 > k) throw DomainError("uniqueness_order_bound: need 0 <= beta1 <= beta2 <= k-1");
  if (!(tau >= 0.0) || tau > static_cast<double>(k) - 1.0)
    throw DomainError("uniqueness_order_bound: need 0 <= tau <= k-1");
  const double kd = static_cast<double>(k);
  const double b1 = static_cast<double>(beta1);
  const double b2 = static_cast<double>(beta2);
  constexpr double slack = 1e-12;
  OrderBound out;
  if (b2 - tau >= 0.0) {
    out.branch = 1;
    out.rho_max = 2.0 * (kd - b2) / (kd - tau);
    out.in_expected_range = out.rho_max >= 2.0 / kd - slack && out.rho_max <= 2.0 + slack;
  } else {
    out.branch = 2;
    out.rho_max = 2.0 * (kd - b1) / (kd + b2 - b1 - tau);
    out.in_expected_range = out.rho_max > 2.0 && out.rho_max <= 2.0 * kd + slack;
  }
  return out;
}

}  // namespace fischerlab
