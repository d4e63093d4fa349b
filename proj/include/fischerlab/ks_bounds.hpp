#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fischerlab/apolar.hpp"
#include "fischerlab/errors.hpp"
#include "fischerlab/jacobi.hpp"
#include "fischerlab/multi_index.hpp"
#include "fischerlab/polynomial.hpp"

namespace fischerlab {

using Complex = std::complex<double>;

/// Matrix of g -> P_k g from the apolar-orthonormal basis {z^a/sqrt(a!), |a| = m}
/// to {z^b/sqrt(b!), |b| = m+k}. Entry (b, a) is c_{b-a} sqrt(b!/a!); the
/// ratio b!/a! is formed exactly and rounded once to double before the root.
inline DenseMatrix<Complex> multiplication_matrix(const Polynomial& pk, std::size_t m) {
  if (pk.is_zero()) throw DomainError("multiplication_matrix: P_k is zero");
  if (!pk.is_homogeneous()) throw DomainError("multiplication_matrix: P_k is not homogeneous");
  const std::size_t dim = pk.dim();
  const std::size_t k = *pk.degree();
  const auto src = monomials_of_degree(dim, m);
  const auto dst = monomials_of_degree(dim, m + k);
  std::map<MultiIndex, std::size_t, GradedLexOrder> row_of;
  for (std::size_t i = 0; i < dst.size(); ++i) row_of.emplace(dst[i], i);
  DenseMatrix<Complex> a(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Integer src_fact = src[j].factorial();
    for (const auto& [gamma, c] : pk.terms()) {
      const MultiIndex beta = src[j] + gamma;
      const double scale = std::sqrt(Rational(Rational(beta.factorial()) / Rational(src_fact)).get_d());
      a(row_of.at(beta), j) = Complex(c.real().get_d(), c.imag().get_d()) * scale;
    }
  }
  return a;
}

struct SingularValueResult {
  double mu = 0.0;             // smallest singular value
  double rayleigh = 0.0;       // exact Rayleigh quotient of the rounded minimizer, as double
  bool certified = false;      // |rayleigh - mu^2| <= tol * mu^2, tol = 1e-6 by default
  Polynomial minimizer{1};     // rounded minimizing g_m in monomial coordinates
  int sweeps = 0;
};

/// mu_m = min ||P_k g||_a / ||g||_a over nonzero g in H_m.
///
/// Computed as the square root of the least eigenvalue of the Gram matrix
/// A^H A (cyclic Jacobi, tolerance 1e-10). The minimizing vector is rounded to
/// an exact polynomial and its Rayleigh quotient recomputed in exact arithmetic.
inline SingularValueResult min_singular_value(const Polynomial& pk, std::size_t m, double certify_tol = 1e-6) {
  const auto a = multiplication_matrix(pk, m);
  const std::size_t n = a.cols;
  DenseMatrix<Complex> gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex s = 0;
      for (std::size_t r = 0; r < a.rows; ++r) s += std::conj(a(r, i)) * a(r, j);
      gram(i, j) = s;
      gram(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) gram(i, i) = Complex(gram(i, i).real(), 0.0);
  const auto eig = jacobi_hermitian_eigen(gram, 1e-10, 100);

  SingularValueResult out;
  out.sweeps = eig.sweeps;
  out.mu = std::sqrt(std::max(eig.values.front(), 0.0));

  const auto basis = monomials_of_degree(pk.dim(), m);
  Polynomial g(pk.dim());
  for (std::size_t i = 0; i < n; ++i) {
    const double inv_root = 1.0 / std::sqrt(Rational(basis[i].factorial()).get_d());
    const Complex v = eig.vectors(i, 0) * inv_root;
    g.add_term(basis[i], ComplexRational(rational_from_double(v.real()), rational_from_double(v.imag())));
  }
  if (g.is_zero()) throw ConvergenceError("minimizing eigenvector rounded to zero");
  const Rational rq = apolar_norm_sq(pk * g) / apolar_norm_sq(g);
  out.rayleigh = rq.get_d();
  const double mu2 = out.mu * out.mu;
  out.certified = std::fabs(out.rayleigh - mu2) <= certify_tol * mu2;
  out.minimizer = std::move(g);
  return out;
}

struct KSEntry {
  std::size_t m = 0;
  std::size_t dim = 0;  // dim H_m
  double mu = 0.0;
  double rayleigh = 0.0;
  bool certified = false;
};

/// Khavinson-Shapiro scan: mu_m over a degree window plus the fit
/// log mu_m = log C + (tau/2) log(m+1).
struct KSReport {
  std::vector<KSEntry> entries;
  std::optional<double> c_fit;
  std::optional<double> tau_fit;
  std::vector<double> residuals;  // log mu_m - fitted value
  double c_certified = 0.0;       // min_m mu_m; with tau = 0 satisfies the bound on the window
  double tau_certified = 0.0;
  bool all_certified = true;
};

inline KSReport ks_scan(const Polynomial& pk, std::size_t m_min, std::size_t m_max, double certify_tol = 1e-6) {
  if (m_min > m_max) throw DomainError("ks_scan: m_min exceeds m_max");
  KSReport rep;
  for (std::size_t m = m_min; m <= m_max; ++m) {
    const auto sv = min_singular_value(pk, m, certify_tol);
    rep.entries.push_back({m, homogeneous_dimension(pk.dim(), m), sv.mu, sv.rayleigh, sv.certified});
    rep.all_certified = rep.all_certified && sv.certified;
  }
  rep.c_certified = rep.entries.front().mu;
  for (const auto& e : rep.entries) rep.c_certified = std::min(rep.c_certified, e.mu);

  if (rep.entries.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rep.entries.size());
    for (const auto& e : rep.entries) {
      const double x = std::log(static_cast<double>(e.m) + 1.0);
      const double y = std::log(e.mu);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    rep.tau_fit = 2.0 * slope;
    rep.c_fit = std::exp(intercept);
    for (const auto& e : rep.entries)
      rep.residuals.push_back(std::log(e.mu) - (intercept + slope * std::log(static_cast<double>(e.m) + 1.0)));
  }
  return rep;
}

struct TauVerdict {
  bool admissible = true;
  std::string reason;
};

/// For d > 1 and k > 1 the bound ||P_k g_m|| >= C (m+1)^{tau/2} ||g_m|| can only hold with tau <= k-1.
inline TauVerdict check_tau_admissible(std::size_t k, double tau, std::size_t d) {
  if (tau < 0.0) return {false, "tau must be nonnegative"};
  if (d > 1 && k > 1 && tau > static_cast<double>(k) - 1.0)
    return {false, "tau exceeds k-1, impossible for d > 1 and k > 1"};
  return {true, "admissible"};
}

}  // namespace fischerlab
