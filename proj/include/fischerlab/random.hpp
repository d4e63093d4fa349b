#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "fischerlab/multi_index.hpp"
#include "fischerlab/polynomial.hpp"

namespace fischerlab {

/// Seeded generators of small random polynomials for property checks.
class PolynomialSampler {
 public:
  explicit PolynomialSampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  /// Gaussian rational with numerators in [-range, range] and denominators in [1, max_den].
  ComplexRational coefficient(long range = 3, long max_den = 2, bool complex = true) {
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, max_den);
    ComplexRational c;
    do {
      Rational re(num(rng_), den(rng_));
      re.canonicalize();
      Rational im(complex ? num(rng_) : 0, den(rng_));
      im.canonicalize();
      c = ComplexRational(re, im);
    } while (c.is_zero());
    return c;
  }

  MultiIndex index_of_degree(std::size_t dim, std::size_t m) {
    MultiIndex a(dim);
    for (std::size_t t = 0; t < m; ++t) a[uniform(0, dim - 1)] += 1;
    return a;
  }

  /// Nonzero homogeneous polynomial of degree m with up to max_terms terms.
  Polynomial homogeneous(std::size_t dim, std::size_t m, std::size_t max_terms = 3) {
    Polynomial p(dim);
    while (p.is_zero()) {
      const std::size_t n = uniform(1, max_terms);
      for (std::size_t t = 0; t < n; ++t) p.add_term(index_of_degree(dim, m), coefficient());
    }
    return p;
  }

  /// Sparse polynomial of degree <= max_degree (possibly zero).
  Polynomial sparse(std::size_t dim, std::size_t max_degree, std::size_t max_terms = 5) {
    Polynomial p(dim);
    const std::size_t n = uniform(0, max_terms);
    for (std::size_t t = 0; t < n; ++t) p.add_term(index_of_degree(dim, uniform(0, max_degree)), coefficient());
    return p;
  }

  /// Non-homogeneous P of degree exactly k >= 1 with at least one nonzero slice below k.
  Polynomial nonhomogeneous(std::size_t dim, std::size_t k, std::size_t max_terms = 3) {
    Polynomial p = homogeneous(dim, k, max_terms);
    const std::size_t lower = uniform(1, k);
    for (std::size_t t = 0; t < lower; ++t) p += homogeneous(dim, uniform(0, k - 1), 2);
    while (p.homogeneous_part(k).is_zero() || p.is_homogeneous()) p += homogeneous(dim, uniform(0, k - 1), 1);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fischerlab
