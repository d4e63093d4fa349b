#pragma once

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fischerlab/errors.hpp"
#include "fischerlab/growth.hpp"
#include "fischerlab/ks_bounds.hpp"
#include "fischerlab/polynomial.hpp"
#include "fischerlab/seq_lemma.hpp"

namespace fischerlab {

using json = nlohmann::json;

/// {"dim": d, "terms": [{"alpha": [...], "re": "p/q", "im": "p/q"}, ...]}
/// Terms are emitted in graded-lex order; rationals are strings so no digit is lost.
inline json to_document(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [alpha, c] : p.terms())
    terms.push_back({{"alpha", alpha.exponents()}, {"re", rational_string(c.real())}, {"im", rational_string(c.imag())}});
  return {{"dim", p.dim()}, {"terms", std::move(terms)}};
}

inline Polynomial from_document(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("terms"))
    throw DomainError("polynomial document needs 'dim' and 'terms'");
  if (!doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() == 0)
    throw DomainError("polynomial document: 'dim' must be a positive integer");
  const auto dim = doc["dim"].get<std::size_t>();
  if (!doc["terms"].is_array()) throw DomainError("polynomial document: 'terms' must be an array");
  Polynomial p(dim);
  std::set<std::vector<MultiIndex::value_type>> seen;
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("alpha") || !t["alpha"].is_array())
      throw DomainError("polynomial document: each term needs an 'alpha' array");
    std::vector<MultiIndex::value_type> alpha;
    for (const auto& e : t["alpha"]) {
      if (!e.is_number_unsigned()) throw DomainError("polynomial document: exponents must be nonnegative integers");
      alpha.push_back(e.get<MultiIndex::value_type>());
    }
    if (alpha.size() != dim) throw DimensionMismatch(dim, alpha.size());
    if (!seen.insert(alpha).second) throw DomainError("polynomial document: repeated exponent vector");
    auto field = [&](const char* key) {
      if (!t.contains(key)) return Rational(0);
      if (!t[key].is_string()) throw DomainError(std::string("polynomial document: '") + key + "' must be a string");
      return parse_rational(t[key].get<std::string>());
    };
    p.add_term(MultiIndex(std::move(alpha)), ComplexRational(field("re"), field("im")));
  }
  return p;
}

/// Array of polynomial documents, element m holding the degree-m slice.
inline json to_document(const GradedSeries& s) {
  json arr = json::array();
  for (const auto& slice : s.slices) arr.push_back(to_document(slice));
  return arr;
}

inline GradedSeries series_from_document(const json& doc) {
  if (!doc.is_array() || doc.empty()) throw DomainError("graded series document must be a nonempty array");
  const Polynomial first = from_document(doc[0]);
  GradedSeries s(first.dim(), doc.size() - 1);
  for (std::size_t m = 0; m < doc.size(); ++m) s.slices[m] = from_document(doc[m]);
  s.validate();
  return s;
}

namespace detail {

inline json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace detail

inline json to_json(const KSReport& rep) {
  json rows = json::array();
  for (const auto& e : rep.entries)
    rows.push_back({{"m", e.m}, {"dim", e.dim}, {"mu", e.mu}, {"rayleigh", e.rayleigh}, {"certified", e.certified}});
  json out = {{"entries", rows},
              {"certified_C", rep.c_certified},
              {"certified_tau", rep.tau_certified},
              {"all_certified", rep.all_certified}};
  out["fitted_C"] = rep.c_fit ? json(*rep.c_fit) : json(nullptr);
  out["fitted_tau"] = rep.tau_fit ? json(*rep.tau_fit) : json(nullptr);
  out["residuals"] = rep.residuals;
  return out;
}

/// Columns: m, dim, mu, certified.
inline std::string to_csv(const KSReport& rep) {
  std::ostringstream os;
  os << "m,dim,mu,certified\n";
  for (const auto& e : rep.entries)
    os << e.m << ',' << e.dim << ',' << detail::csv_number(e.mu) << ',' << (e.certified ? "true" : "false") << '\n';
  return os.str();
}

inline json to_json(const GrowthReport& rep) {
  json rows = json::array();
  for (std::size_t m = 0; m < rep.log_sup.size(); ++m)
    rows.push_back({{"m", m},
                    {"log_sup_estimate", detail::number_or_null(rep.log_sup[m])},
                    {"log_apolar_norm", detail::number_or_null(rep.log_apolar[m])},
                    {"zero_slice", rep.log_sup[m] == -std::numeric_limits<double>::infinity()}});
  return {{"slices", rows},
          {"rho_estimate", detail::number_or_null(rep.order.rho)},
          {"limsup_ratio", detail::number_or_null(rep.order.limsup_ratio)},
          {"window_points", rep.order.window_points},
          {"sup_method", rep.sup_method}};
}

/// Columns: m, log_sup_estimate, log_apolar_norm.
inline std::string to_csv(const GrowthReport& rep) {
  std::ostringstream os;
  os << "m,log_sup_estimate,log_apolar_norm\n";
  for (std::size_t m = 0; m < rep.log_sup.size(); ++m)
    os << m << ',' << detail::csv_number(rep.log_sup[m]) << ',' << detail::csv_number(rep.log_apolar[m]) << '\n';
  return os.str();
}

inline LemmaConfig lemma_config_from_json(const json& j) {
  LemmaConfig cfg;
  if (!j.contains("E") || !j["E"].is_array()) throw DomainError("lemma config needs an 'E' array");
  for (const auto& e : j["E"]) {
    if (!e.is_number_unsigned()) throw DomainError("lemma config: E holds positive integers");
    cfg.gaps.insert(e.get<std::size_t>());
  }
  auto num = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw DomainError(std::string("lemma config: '") + key + "' must be a number");
    return j[key].get<double>();
  };
  cfg.a = num("A", 1.0);
  cfg.d = num("D", 0.0);
  cfg.alpha = num("alpha", 0.0);
  cfg.a0 = num("A0", 1.0);
  cfg.b0 = num("b0", 1.0);
  cfg.d0 = num("D0", 0.0);
  cfg.alpha0 = num("alpha0", 0.0);
  cfg.sigma = num("sigma", 1.0);
  cfg.validate();
  return cfg;
}

inline json to_json(const HypothesisReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"m", r.m},
                    {"pass", r.pass},
                    {"lhs_log", detail::number_or_null(r.lhs_log)},
                    {"rhs_log", detail::number_or_null(r.rhs_log)}});
  json out = {{"rows", rows}, {"all_pass", rep.all_pass}};
  if (rep.tightest_a) out["tightest_A"] = detail::number_or_null(*rep.tightest_a);
  return out;
}

inline json to_json(const ProbeTrace& t) {
  json chains = json::array();
  for (const auto& c : t.chains) chains.push_back({{"step", c.step}, {"tail_slope", c.tail_slope}, {"log_values", c.log_values}});
  json out = {{"regime", to_string(t.regime)},
              {"chains", chains},
              {"max_tail_slope", t.max_tail_slope},
              {"decreasing", t.decreasing}};
  if (t.boundary_log_limit) out["boundary_log_limit"] = *t.boundary_log_limit;
  return out;
}

}  // namespace fischerlab
