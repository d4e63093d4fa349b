#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fischerlab/errors.hpp"
#include "fischerlab/scalar.hpp"

namespace fischerlab {

/// Dense row-major matrix over Q(i).
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  ComplexRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ComplexRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<ComplexRational> apply(const std::vector<ComplexRational>& x) const {
    if (x.size() != cols_) throw DimensionMismatch(cols_, x.size());
    std::vector<ComplexRational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ComplexRational> data_;
};

namespace detail {

// Bit height of an entry; small pivots keep intermediate rationals short.
inline std::size_t height(const ComplexRational& z) {
  auto bits = [](const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  };
  return bits(z.real()) + bits(z.imag());
}

struct Echelon {
  ExactMatrix reduced;  // reduced row echelon form of [A | rhs]
  std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan over Q(i). Only the first `pivot_limit` columns are eligible as
// pivots; the rest ride along as right-hand sides. Within a column the pivot is
// the nonzero candidate of least bit height, ties broken by the lowest row.
inline Echelon gauss_jordan(ExactMatrix a, std::size_t pivot_limit) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_limit && row < a.rows(); ++col) {
    std::optional<std::size_t> best;
    std::size_t best_h = 0;
    for (std::size_t i = row; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      const auto h = height(a(i, col));
      if (!best || h < best_h) {
        best = i;
        best_h = h;
      }
    }
    if (!best) continue;
    if (*best != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(*best, j), a(row, j));
    const ComplexRational inv = ComplexRational(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j)
      if (!a(row, j).is_zero()) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const ComplexRational factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= factor * a(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

}  // namespace detail

inline std::size_t rank(const ExactMatrix& a) { return detail::gauss_jordan(a, a.cols()).pivot_cols.size(); }

/// Unique solution of the square system A x = b, or nullopt when A is singular.
inline std::optional<std::vector<ComplexRational>> solve(const ExactMatrix& a, const std::vector<ComplexRational>& b) {
  if (a.rows() != a.cols()) throw DomainError("solve expects a square matrix");
  if (b.size() != a.rows()) throw DimensionMismatch(a.rows(), b.size());
  const std::size_t n = a.rows();
  ExactMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto ech = detail::gauss_jordan(std::move(aug), n);
  if (ech.pivot_cols.size() != n) return std::nullopt;
  std::vector<ComplexRational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[ech.pivot_cols[i]] = ech.reduced(i, n);
  return x;
}

/// A nonzero vector of ker A, or nullopt if A has full column rank.
inline std::optional<std::vector<ComplexRational>> kernel_vector(const ExactMatrix& a) {
  auto ech = detail::gauss_jordan(a, a.cols());
  if (ech.pivot_cols.size() == a.cols()) return std::nullopt;
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<ComplexRational> v(a.cols());
  v[free_col] = 1;
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) v[ech.pivot_cols[i]] = -ech.reduced(i, free_col);
  return v;
}

}  // namespace fischerlab
