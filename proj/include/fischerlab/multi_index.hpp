#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "fischerlab/errors.hpp"
#include "fischerlab/scalar.hpp"

namespace fischerlab {

/// Exponent vector alpha = (alpha_1, ..., alpha_d) of the monomial z^alpha.
class MultiIndex {
 public:
  using value_type = std::uint32_t;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : e_(dim, 0) {}
  explicit MultiIndex(std::vector<value_type> exponents) : e_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<value_type> exponents) : e_(exponents) {}

  /// Unit index e_i (0-based i).
  static MultiIndex unit(std::size_t dim, std::size_t i) {
    MultiIndex a(dim);
    a.e_.at(i) = 1;
    return a;
  }

  std::size_t dim() const noexcept { return e_.size(); }
  value_type operator[](std::size_t i) const { return e_[i]; }
  value_type& operator[](std::size_t i) { return e_[i]; }
  const std::vector<value_type>& exponents() const noexcept { return e_; }

  /// |alpha|
  std::size_t degree() const {
    std::size_t s = 0;
    for (auto v : e_) s += v;
    return s;
  }

  /// alpha! = alpha_1! ... alpha_d!
  Integer factorial() const {
    Integer r = 1;
    for (auto v : e_) r *= fischerlab::factorial(v);
    return r;
  }

  /// Componentwise alpha <= beta.
  bool divides(const MultiIndex& beta) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > beta.e_[i]) return false;
    return true;
  }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
    MultiIndex r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }

  /// beta - alpha; requires alpha.divides(beta).
  friend MultiIndex operator-(const MultiIndex& beta, const MultiIndex& alpha) {
    MultiIndex r = beta;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= alpha.e_[i];
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<value_type> e_;
};

/// Canonical term order: higher total degree first, then lexicographically
/// larger exponent vectors first (z1^2 > z1 z2 > z2^2 > z1 > z2 > 1).
struct GradedLexOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) return da > db;
    return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(), a.exponents().begin(),
                                        a.exponents().end());
  }
};

/// C(m+d-1, d-1): number of monomials of degree m in d variables.
inline std::size_t homogeneous_dimension(std::size_t dim, std::size_t m) {
  if (dim == 0) return m == 0 ? 1 : 0;
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), m + dim - 1, dim - 1);
  return c.get_ui();
}

/// Monomial basis of H_m in canonical order.
inline std::vector<MultiIndex> monomials_of_degree(std::size_t dim, std::size_t m) {
  std::vector<MultiIndex> out;
  if (dim == 0) return out;
  out.reserve(homogeneous_dimension(dim, m));
  MultiIndex cur(dim);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == dim) {
      cur[i] = static_cast<MultiIndex::value_type>(left);
      out.push_back(cur);
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      cur[i] = static_cast<MultiIndex::value_type>(v);
      rec(i + 1, left - v);
    }
  };
  rec(0, m);
  return out;
}

}  // namespace fischerlab
