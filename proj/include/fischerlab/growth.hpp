#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "fischerlab/apolar.hpp"
#include "fischerlab/errors.hpp"
#include "fischerlab/polynomial.hpp"
#include "fischerlab/scalar.hpp"

namespace fischerlab {

namespace detail {

// Double-precision copy of f scaled by 2^-shift so that the largest
// coefficient has magnitude in [1/2, 2); |f(z)| = |scaled(z)| * 2^shift.
struct ScaledEvaluator {
  std::size_t dim = 0;
  long shift = 0;
  std::vector<std::pair<std::vector<std::uint32_t>, std::complex<double>>> terms;

  explicit ScaledEvaluator(const Polynomial& f) : dim(f.dim()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [alpha, c] : f.terms()) best = std::max(best, 0.5 * log_abs(c.norm_sq()));
    if (f.is_zero()) return;
    shift = static_cast<long>(std::floor(best / std::log(2.0)));
    for (const auto& [alpha, c] : f.terms()) {
      Rational re = c.real();
      Rational im = c.imag();
      if (shift >= 0) {
        mpq_div_2exp(re.get_mpq_t(), re.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
        mpq_div_2exp(im.get_mpq_t(), im.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
      } else {
        mpq_mul_2exp(re.get_mpq_t(), re.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
        mpq_mul_2exp(im.get_mpq_t(), im.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
      }
      terms.emplace_back(alpha.exponents(), std::complex<double>(re.get_d(), im.get_d()));
    }
  }

  std::complex<double> value(const std::vector<std::complex<double>>& z) const {
    std::complex<double> acc = 0;
    for (const auto& [e, c] : terms) {
      std::complex<double> t = c;
      for (std::size_t i = 0; i < dim; ++i)
        if (e[i]) t *= std::pow(z[i], static_cast<int>(e[i]));
      acc += t;
    }
    return acc;
  }

  // Returns f(z) and fills grad with d f / d z_i.
  std::complex<double> value_and_gradient(const std::vector<std::complex<double>>& z,
                                          std::vector<std::complex<double>>& grad) const {
    grad.assign(dim, 0.0);
    std::complex<double> acc = 0;
    for (const auto& [e, c] : terms) {
      std::vector<std::complex<double>> powers(dim);
      std::complex<double> t = c;
      for (std::size_t i = 0; i < dim; ++i) {
        powers[i] = e[i] ? std::pow(z[i], static_cast<int>(e[i])) : std::complex<double>(1.0);
        t *= powers[i];
      }
      acc += t;
      for (std::size_t i = 0; i < dim; ++i) {
        if (!e[i]) continue;
        std::complex<double> d = c * static_cast<double>(e[i]) * std::pow(z[i], static_cast<int>(e[i]) - 1);
        for (std::size_t l = 0; l < dim; ++l)
          if (l != i) d *= powers[l];
        grad[i] += d;
      }
    }
    return acc;
  }
};

inline double radical_inverse(std::uint64_t n, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return r;
}

inline constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

// Halton points in [0,1)^{2d}, shifted by a seeded Cranley-Patterson rotation,
// mapped to Gaussians by Box-Muller and normalized onto S^{2d-1}.
inline std::vector<std::vector<std::complex<double>>> sphere_samples(std::size_t dim, std::size_t count,
                                                                    std::uint64_t seed) {
  if (2 * dim > std::size(kPrimes)) throw DomainError("sphere sampling supports d <= 8");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> shift(2 * dim);
  for (auto& s : shift) s = unif(rng);
  std::vector<std::vector<std::complex<double>>> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    std::vector<std::complex<double>> z(dim);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double u1 = std::fmod(radical_inverse(n, kPrimes[2 * i]) + shift[2 * i], 1.0);
      double u2 = std::fmod(radical_inverse(n, kPrimes[2 * i + 1]) + shift[2 * i + 1], 1.0);
      u1 = std::max(u1, 1e-300);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      z[i] = {rad * std::cos(2.0 * std::numbers::pi * u2), rad * std::sin(2.0 * std::numbers::pi * u2)};
      norm += std::norm(z[i]);
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (auto& v : z) v /= norm;
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace detail

struct SupNormOptions {
  std::size_t samples = 4096;
  std::size_t ascent_steps = 50;
  std::size_t starts = 8;
  std::uint64_t seed = 0;
};

/// log max_{theta in S^{2d-1}} |f_m(theta)|, estimated from below; -inf for f = 0.
///
/// Quasi-random sphere samples, then projected gradient ascent on |f|^2 from
/// the best few samples. Every reported value was attained at a sphere point,
/// so the estimate never exceeds the true maximum.
inline double log_sup_norm_estimate(const Polynomial& f_m, const SupNormOptions& opt = {}) {
  if (!f_m.is_homogeneous()) throw DomainError("sup_norm_estimate expects a homogeneous polynomial");
  if (f_m.is_zero()) return -std::numeric_limits<double>::infinity();
  const detail::ScaledEvaluator ev(f_m);
  const std::size_t dim = f_m.dim();
  auto points = detail::sphere_samples(dim, opt.samples, opt.seed);
  // Coordinate axes are cheap, exact candidates for monomial-dominated slices.
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::complex<double>> e(dim, 0.0);
    e[i] = 1.0;
    points.push_back(std::move(e));
  }
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) scored.emplace_back(std::abs(ev.value(points[i])), i);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  double best = scored.front().first;

  std::vector<std::complex<double>> grad;
  for (std::size_t s = 0; s < std::min(opt.starts, scored.size()); ++s) {
    auto z = points[scored[s].second];
    double cur = scored[s].first;
    double step = 0.5;
    for (std::size_t it = 0; it < opt.ascent_steps; ++it) {
      const auto val = ev.value_and_gradient(z, grad);
      // Real gradient of |f|^2 in R^{2d}, packed as complex: 2 f conj(df/dz_i).
      double gnorm = 0.0;
      for (auto& g : grad) {
        g = 2.0 * val * std::conj(g);
        gnorm += std::norm(g);
      }
      gnorm = std::sqrt(gnorm);
      if (gnorm == 0.0) break;
      bool improved = false;
      while (step > 1e-12) {
        std::vector<std::complex<double>> trial(dim);
        double norm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
          trial[i] = z[i] + step * grad[i] / gnorm;
          norm += std::norm(trial[i]);
        }
        norm = std::sqrt(norm);
        for (auto& v : trial) v /= norm;
        const double tv = std::abs(ev.value(trial));
        if (tv > cur) {
          z = std::move(trial);
          cur = tv;
          step *= 1.5;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    best = std::max(best, cur);
  }
  return std::log(best) + static_cast<double>(ev.shift) * std::log(2.0);
}

inline double sup_norm_estimate(const Polynomial& f_m, const SupNormOptions& opt = {}) {
  return std::exp(log_sup_norm_estimate(f_m, opt));
}

struct OrderEstimate {
  double rho = 0.0;            // regression estimate of the order
  double limsup_ratio = 0.0;   // max over the tail of m log m / (-log sup_m)
  std::size_t window_points = 0;
};

/// Order of growth from per-degree log sup norms (index = degree, -inf for zero slices).
///
/// An entire function has order rho exactly when -log max|f_m| grows like
/// (m log m)/rho. On the tail window [M/2, M] the estimator fits
///   -log max|f_m| ~ a m log m + b m + c log m + e
/// by least squares and reports rho = 1/a. The lower-order terms absorb the
/// Stirling corrections that make the raw ratio m log m / (-log max|f_m|)
/// converge only like 1/log m; that raw tail maximum is reported alongside.
inline OrderEstimate order_estimate(const std::vector<double>& log_sup, std::size_t truncation) {
  if (truncation < 10) throw DomainError("order_estimate: truncation must be at least 10");
  if (log_sup.size() < truncation + 1) throw DomainError("order_estimate: fewer slices than the truncation");
  OrderEstimate out;
  const std::size_t lo = std::max<std::size_t>((truncation + 1) / 2, 2);
  std::vector<std::size_t> window;
  for (std::size_t m = lo; m <= truncation; ++m)
    if (log_sup[m] != -std::numeric_limits<double>::infinity()) window.push_back(m);
  if (window.empty()) return out;  // eventually zero: a polynomial, order 0

  std::size_t nonzero = 0;
  for (std::size_t m = 0; m <= truncation; ++m)
    if (log_sup[m] != -std::numeric_limits<double>::infinity()) ++nonzero;
  if (nonzero < 3 || window.size() < 3) throw DomainError("order_estimate: too few nonzero slices");
  out.window_points = window.size();

  for (auto m : window) {
    const double md = static_cast<double>(m);
    const double denom = -log_sup[m];
    const double r = denom <= 0.0 ? std::numeric_limits<double>::infinity() : md * std::log(md) / denom;
    out.limsup_ratio = std::max(out.limsup_ratio, r);
  }

  // Least squares by modified Gram-Schmidt on column-scaled features.
  const std::size_t ncols = window.size() >= 4 ? 4 : 3;
  std::vector<std::vector<double>> cols(ncols, std::vector<double>(window.size()));
  std::vector<double> y(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    const double md = static_cast<double>(window[i]);
    cols[0][i] = md * std::log(md);
    cols[1][i] = md;
    cols[2][i] = 1.0;
    if (ncols == 4) cols[3][i] = std::log(md);
    y[i] = -log_sup[window[i]];
  }
  std::vector<double> scale(ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    double s = 0;
    for (double v : cols[j]) s = std::max(s, std::fabs(v));
    scale[j] = s;
    for (double& v : cols[j]) v /= s;
  }
  std::vector<std::vector<double>> r(ncols, std::vector<double>(ncols, 0.0));
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0;
      for (std::size_t t = 0; t < y.size(); ++t) dot += cols[i][t] * cols[j][t];
      r[i][j] = dot;
      for (std::size_t t = 0; t < y.size(); ++t) cols[j][t] -= dot * cols[i][t];
    }
    double nrm = 0;
    for (double v : cols[j]) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) throw DomainError("order_estimate: degenerate regression window");
    r[j][j] = nrm;
    for (double& v : cols[j]) v /= nrm;
  }
  std::vector<double> qty(ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    double dot = 0;
    for (std::size_t t = 0; t < y.size(); ++t) dot += cols[j][t] * y[t];
    qty[j] = dot;
  }
  std::vector<double> coef(ncols);
  for (std::size_t j = ncols; j-- > 0;) {
    double s = qty[j];
    for (std::size_t l = j + 1; l < ncols; ++l) s -= r[j][l] * coef[l];
    coef[j] = s / r[j][j];
  }
  const double a = coef[0] / scale[0];
  out.rho = a > 0.0 ? 1.0 / a : std::numeric_limits<double>::infinity();
  return out;
}

/// Per-degree data plus the order estimate for a truncated series.
struct GrowthReport {
  std::vector<double> log_sup;        // lower-bound estimates of log max |f_m| on the sphere
  std::vector<double> log_apolar;     // log ||f_m||_a
  OrderEstimate order;
  std::string sup_method = "quasi-random sphere sampling + projected gradient ascent (lower bound)";
};

inline GrowthReport growth_report(const GradedSeries& f, std::size_t truncation, const SupNormOptions& opt = {}) {
  f.validate();
  if (truncation > f.truncation()) throw DomainError("growth_report: truncation beyond the series data");
  GrowthReport rep;
  for (std::size_t m = 0; m <= truncation; ++m) {
    rep.log_sup.push_back(log_sup_norm_estimate(f.slices[m], opt));
    rep.log_apolar.push_back(0.5 * log_abs(apolar_norm_sq(f.slices[m])));
  }
  rep.order = order_estimate(rep.log_sup, truncation);
  return rep;
}

/// log of 2 sqrt(pi) C_d e^{-m/2} (m+d-1)^{d/2} m^{m(1/2 - 1/(rho+eps))}.
inline double log_cond2_bound(std::size_t m, std::size_t d, double rho_plus_eps, double c_d) {
  if (m < 1 || d < 1) throw DomainError("cond2_bound: need m >= 1 and d >= 1");
  if (!(rho_plus_eps > 0.0) || !(c_d > 0.0)) throw DomainError("cond2_bound: need rho+eps > 0 and C_d > 0");
  const double md = static_cast<double>(m);
  const double dd = static_cast<double>(d);
  return std::log(2.0) + 0.5 * std::log(std::numbers::pi) + std::log(c_d) - md / 2.0 +
         dd / 2.0 * std::log(md + dd - 1.0) + md * (0.5 - 1.0 / rho_plus_eps) * std::log(md);
}

inline double cond2_bound(std::size_t m, std::size_t d, double rho_plus_eps, double c_d) {
  return std::exp(log_cond2_bound(m, d, rho_plus_eps, c_d));
}

namespace detail {

template <class Real>
Real pow_uint(Real base, unsigned n) {
  Real r(1);
  while (n) {
    if (n & 1u) r *= base;
    base *= base;
    n >>= 1u;
  }
  return r;
}

}  // namespace detail

/// Stirling lower bound (2 pi m)^{1/2} (m/e)^m e^{1/(12m+1)} <= m!, m >= 1.
template <class Real = double>
Real stirling_lower(unsigned m) {
  using std::exp;
  using std::sqrt;
  if (m < 1) throw DomainError("stirling_lower: m must be at least 1");
  const Real mr(m);
  const Real pi = boost::math::constants::pi<Real>();
  return sqrt(Real(2) * pi * mr) * detail::pow_uint<Real>(mr / exp(Real(1)), m) * exp(Real(1) / (Real(12) * mr + Real(1)));
}

/// m! < sqrt(2 pi m) (m/e)^m e^{1/(12m)}, the sharp upper form.
template <class Real = double>
Real stirling_upper_sharp(unsigned m) {
  using std::exp;
  using std::sqrt;
  if (m < 1) throw DomainError("stirling_upper_sharp: m must be at least 1");
  const Real mr(m);
  const Real pi = boost::math::constants::pi<Real>();
  return sqrt(Real(2) * pi * mr) * detail::pow_uint<Real>(mr / exp(Real(1)), m) * exp(Real(1) / (Real(12) * mr));
}

/// m! < 2 sqrt(pi m) (m/e)^m, from e^{1/(12m)} < sqrt(2).
template <class Real = double>
Real stirling_upper(unsigned m) {
  using std::exp;
  using std::sqrt;
  if (m < 1) throw DomainError("stirling_upper: m must be at least 1");
  const Real mr(m);
  const Real pi = boost::math::constants::pi<Real>();
  return Real(2) * sqrt(pi * mr) * detail::pow_uint<Real>(mr / exp(Real(1)), m);
}

}  // namespace fischerlab
