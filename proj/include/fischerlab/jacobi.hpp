#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "fischerlab/errors.hpp"

namespace fischerlab {

/// Dense row-major matrix for the floating-point paths.
template <class T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

template <class Real>
struct HermitianEigen {
  std::vector<Real> values;                      // ascending
  DenseMatrix<std::complex<Real>> vectors;       // column j belongs to values[j]
  int sweeps = 0;
};

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation first multiplies column q by a unit phase so that a_pq
/// becomes real, then applies the classical real rotation in the (p, q) plane.
/// Stops when the off-diagonal Frobenius norm drops below tol * ||A||_F.
template <class Real>
HermitianEigen<Real> jacobi_hermitian_eigen(DenseMatrix<std::complex<Real>> a, Real tol = Real(1e-10),
                                            int max_sweeps = 100) {
  using Complex = std::complex<Real>;
  if (a.rows != a.cols) throw DomainError("jacobi_hermitian_eigen expects a square matrix");
  const std::size_t n = a.rows;
  DenseMatrix<Complex> v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = Complex(1);

  Real total = 0;
  for (const auto& x : a.data) total += std::norm(x);
  const Real threshold = tol * std::sqrt(total);

  auto off_norm = [&] {
    Real s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep == max_sweeps) throw ConvergenceError("Jacobi iteration hit its sweep cap");
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real mag = std::abs(a(p, q));
        if (mag == Real(0)) continue;
        // Phase: scale column q by conj(w) and row q by w, w = a_pq / |a_pq|.
        const Complex w = a(p, q) / mag;
        const Complex wc = std::conj(w);
        for (std::size_t k = 0; k < n; ++k) {
          a(k, q) *= wc;
          v(k, q) *= wc;
        }
        for (std::size_t k = 0; k < n; ++k) a(q, k) *= w;
        a(p, q) = Complex(mag);
        a(q, p) = Complex(mag);

        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real theta = (aqq - app) / (Real(2) * mag);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Complex(0);
        a(q, p) = Complex(0);
        a(p, p) = Complex(app - t * mag);
        a(q, q) = Complex(aqq + t * mag);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen<Real> out;
  out.sweeps = sweep;
  out.vectors = DenseMatrix<Complex>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values.push_back(a(order[j], order[j]).real());
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

}  // namespace fischerlab
