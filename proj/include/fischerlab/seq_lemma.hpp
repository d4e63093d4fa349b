#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fischerlab/errors.hpp"

namespace fischerlab {

/// Constants of the two hypotheses on a nonnegative sequence a_m:
///   (i)  a_m <= A (m+D)^alpha max_{j in E} a_{m+j}            for all m >= 0
///   (ii) a_m <= A0 (m+D0)^alpha0 b0^{-m} m^{-m/sigma}          for all m >= 1
struct LemmaConfig {
  std::set<std::size_t> gaps;  // E
  double a = 1.0;              // A >= 1
  double d = 0.0;              // D >= 0
  double alpha = 0.0;
  double a0 = 1.0;      // A0 > 0
  double b0 = 1.0;      // b0 > 0
  double d0 = 0.0;      // D0 >= 0
  double alpha0 = 0.0;  // alpha0 >= 0
  double sigma = 1.0;   // sigma != 0

  std::size_t beta_low() const { return *gaps.begin(); }    // min E
  std::size_t beta_high() const { return *gaps.rbegin(); }  // max E

  void validate() const {
    if (gaps.empty()) throw DomainError("lemma config: E must be nonempty");
    if (gaps.count(0)) throw DomainError("lemma config: E must not contain 0");
    if (!(a >= 1.0)) throw DomainError("lemma config: need A >= 1");
    if (!(d >= 0.0)) throw DomainError("lemma config: need D >= 0");
    if (!(a0 > 0.0) || !(b0 > 0.0)) throw DomainError("lemma config: need A0, b0 > 0");
    if (!(d0 >= 0.0) || !(alpha0 >= 0.0)) throw DomainError("lemma config: need D0, alpha0 >= 0");
    if (sigma == 0.0 || !std::isfinite(sigma)) throw DomainError("lemma config: need sigma != 0");
    if (!std::isfinite(alpha)) throw DomainError("lemma config: alpha must be finite");
  }
};

inline constexpr double kLemmaLogTolerance = 1e-12;

struct HypothesisRow {
  std::size_t m = 0;
  bool pass = true;
  double lhs_log = 0.0;  // log a_m (-inf for zero)
  double rhs_log = 0.0;  // log of the right-hand side
};

struct HypothesisReport {
  std::vector<HypothesisRow> rows;
  bool all_pass = true;
  std::optional<double> tightest_a;  // smallest A making (i) hold on the window; (i) only
};

namespace detail {

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity(); }

// log((m+D)^alpha) with 0^0 = 1.
inline double log_power(double base, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (base == 0.0) return exponent > 0.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  return exponent * std::log(base);
}

inline bool leq_log(double lhs, double rhs) {
  if (lhs == -std::numeric_limits<double>::infinity()) return true;
  if (rhs == std::numeric_limits<double>::infinity()) return true;
  return lhs <= rhs + kLemmaLogTolerance * std::max(1.0, std::fabs(rhs));
}

inline void check_nonnegative(const std::vector<double>& a) {
  for (double v : a)
    if (!(v >= 0.0)) throw DomainError("sequence entries must be nonnegative");
}

}  // namespace detail

/// Checks hypothesis (i) for m = 0..m_max and reports the tightest feasible A.
inline HypothesisReport check_hypothesis_i(const std::vector<double>& a, const LemmaConfig& cfg, std::size_t m_max) {
  cfg.validate();
  detail::check_nonnegative(a);
  if (a.size() < m_max + cfg.beta_high() + 1) throw DomainError("hypothesis (i) needs a_m up to m_max + max E");
  HypothesisReport rep;
  double tightest = 0.0;
  for (std::size_t m = 0; m <= m_max; ++m) {
    double best_next = 0.0;
    for (auto j : cfg.gaps) best_next = std::max(best_next, a[m + j]);
    const double growth_log = detail::log_power(static_cast<double>(m) + cfg.d, cfg.alpha);
    HypothesisRow row{m, true, detail::safe_log(a[m]), 0.0};
    const double base_log = growth_log + detail::safe_log(best_next);
    row.rhs_log = std::log(cfg.a) + base_log;
    if (std::isnan(row.rhs_log)) row.rhs_log = -std::numeric_limits<double>::infinity();
    row.pass = detail::leq_log(row.lhs_log, row.rhs_log);
    if (a[m] > 0.0) {
      const double need = std::isnan(base_log) ? std::numeric_limits<double>::infinity() : row.lhs_log - base_log;
      tightest = std::max(tightest, std::exp(need));
    }
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  rep.tightest_a = tightest;
  return rep;
}

/// Checks hypothesis (ii) for m = 1..m_max in log space.
inline HypothesisReport check_hypothesis_ii(const std::vector<double>& a, const LemmaConfig& cfg, std::size_t m_max) {
  cfg.validate();
  detail::check_nonnegative(a);
  if (a.size() < m_max + 1) throw DomainError("hypothesis (ii) needs a_m up to m_max");
  HypothesisReport rep;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    HypothesisRow row{m, true, detail::safe_log(a[m]), 0.0};
    row.rhs_log = std::log(cfg.a0) + detail::log_power(md + cfg.d0, cfg.alpha0) - md * std::log(cfg.b0) -
                  md / cfg.sigma * std::log(md);
    row.pass = detail::leq_log(row.lhs_log, row.rhs_log);
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

enum class Regime { nonneg_strict, boundary, negative, inconclusive };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::nonneg_strict: return "nonneg_strict";
    case Regime::boundary: return "boundary";
    case Regime::negative: return "negative";
    case Regime::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct RegimeVerdict {
  Regime regime = Regime::inconclusive;
  bool conclusion_applies = false;
  std::string reason;
};

/// Which clause of the lemma (if any) forces a_m = 0:
///   0 <= alpha < beta_low/sigma                       -> nonneg_strict
///   alpha = beta_low/sigma > 0 and A < b0^{beta_low}  -> boundary
///   alpha < 0 and alpha < beta_high/sigma             -> negative
inline RegimeVerdict classify_regime(const LemmaConfig& cfg) {
  cfg.validate();
  const double low = static_cast<double>(cfg.beta_low()) / cfg.sigma;
  const double high = static_cast<double>(cfg.beta_high()) / cfg.sigma;
  const double eq_tol = kLemmaLogTolerance * std::max(1.0, std::fabs(low));
  if (cfg.alpha >= 0.0 && cfg.alpha < low - eq_tol)
    return {Regime::nonneg_strict, true, "0 <= alpha < min(E)/sigma"};
  if (cfg.alpha > 0.0 && std::fabs(cfg.alpha - low) <= eq_tol) {
    const double threshold_log = static_cast<double>(cfg.beta_low()) * std::log(cfg.b0);
    if (std::log(cfg.a) < threshold_log) return {Regime::boundary, true, "alpha = min(E)/sigma > 0 and A < b0^min(E)"};
    return {Regime::inconclusive, false, "alpha = min(E)/sigma but A >= b0^min(E)"};
  }
  if (cfg.alpha < 0.0 && cfg.alpha < high) return {Regime::negative, true, "alpha < 0 and alpha < max(E)/sigma"};
  if (cfg.alpha >= 0.0 && cfg.sigma < 0.0)
    return {Regime::inconclusive, false, "alpha >= 0 with sigma < 0: the first clause is vacuous"};
  return {Regime::inconclusive, false, "no clause of the lemma applies"};
}

struct ProbeChain {
  std::size_t step = 0;            // every l_i equals this element of E
  std::vector<double> log_values;  // log(p_{m,j}^{alpha/k_j} k_j^{-1/sigma}), j = 1..j_max
  double tail_slope = 0.0;         // least-squares slope over the last half
};

struct ProbeTrace {
  Regime regime = Regime::inconclusive;
  std::vector<ProbeChain> chains;  // l_i = min E and l_i = max E
  double max_tail_slope = 0.0;
  bool decreasing = false;  // every chain has tail slope < -1e-3
  // Boundary regime only: log of b0^{-1} A^{1/min E}, the limit bound that must be < 0.
  std::optional<double> boundary_log_limit;
};

/// Evaluates p_{m,j}^{alpha/k_j} k_j^{-1/sigma} along the two extreme chains,
/// p_{m,j} = prod_{s<j} (m + D + s l), k_j = m + j l.
inline ProbeTrace limit_probe(const LemmaConfig& cfg, std::size_t m, std::size_t j_max) {
  const auto verdict = classify_regime(cfg);
  if (!verdict.conclusion_applies) throw DomainError("limit_probe: no clause of the lemma applies to this config");
  if (j_max < 4) throw DomainError("limit_probe: j_max must be at least 4");
  ProbeTrace trace;
  trace.regime = verdict.regime;
  std::vector<std::size_t> steps{cfg.beta_low()};
  if (cfg.beta_high() != cfg.beta_low()) steps.push_back(cfg.beta_high());
  trace.max_tail_slope = -std::numeric_limits<double>::infinity();
  for (auto l : steps) {
    ProbeChain chain;
    chain.step = l;
    double log_p = 0.0;
    for (std::size_t j = 1; j <= j_max; ++j) {
      const double factor = static_cast<double>(m) + cfg.d + static_cast<double>((j - 1) * l);
      log_p += detail::log_power(factor, 1.0);
      const double kj = static_cast<double>(m + j * l);
      double v = -std::log(kj) / cfg.sigma;
      if (cfg.alpha != 0.0) v += cfg.alpha / kj * log_p;
      chain.log_values.push_back(v);
    }
    const std::size_t start = chain.log_values.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(chain.log_values.size() - start);
    for (std::size_t i = start; i < chain.log_values.size(); ++i) {
      const double x = static_cast<double>(i + 1);
      sx += x;
      sy += chain.log_values[i];
      sxx += x * x;
      sxy += x * chain.log_values[i];
    }
    chain.tail_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    trace.max_tail_slope = std::max(trace.max_tail_slope, chain.tail_slope);
    trace.chains.push_back(std::move(chain));
  }
  trace.decreasing = trace.max_tail_slope < -1e-3;
  if (verdict.regime == Regime::boundary)
    trace.boundary_log_limit = std::log(cfg.a) / static_cast<double>(cfg.beta_low()) - std::log(cfg.b0);
  return trace;
}

enum class Consistency { consistent, alert, not_applicable };

inline std::string to_string(Consistency c) {
  switch (c) {
    case Consistency::consistent: return "consistent";
    case Consistency::alert: return "alert";
    case Consistency::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

struct ConsistencyVerdict {
  Consistency status = Consistency::not_applicable;
  std::optional<std::size_t> first_positive;  // index of the first a_m > 0 when alerting
  std::string reason;
};

/// When both hypotheses hold on the window and a clause applies, the lemma
/// forces a_m = 0; any positive entry is flagged. Hypotheses were only checked
/// on finitely many m, so an alert is a data inconsistency, not a disproof.
inline ConsistencyVerdict conclusion_consistency(const std::vector<double>& a, const LemmaConfig& cfg, std::size_t m_max) {
  const auto regime = classify_regime(cfg);
  if (!regime.conclusion_applies) return {Consistency::not_applicable, std::nullopt, "regime: " + regime.reason};
  if (!check_hypothesis_i(a, cfg, m_max).all_pass) return {Consistency::not_applicable, std::nullopt, "hypothesis (i) fails"};
  if (!check_hypothesis_ii(a, cfg, m_max).all_pass) return {Consistency::not_applicable, std::nullopt, "hypothesis (ii) fails"};
  for (std::size_t m = 0; m <= m_max; ++m)
    if (a[m] > 0.0) return {Consistency::alert, m, "positive entry although the lemma forces a_m = 0"};
  return {Consistency::consistent, std::nullopt, "all entries vanish"};
}

}  // namespace fischerlab
