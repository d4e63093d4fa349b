#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fischerlab/apolar.hpp"
#include "fischerlab/document.hpp"
#include "fischerlab/errors.hpp"
#include "fischerlab/expression.hpp"
#include "fischerlab/fischer.hpp"
#include "fischerlab/growth.hpp"
#include "fischerlab/ks_bounds.hpp"
#include "fischerlab/random.hpp"
#include "fischerlab/seq_lemma.hpp"

namespace fischerlab {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,         // usage, I/O, parse or domain errors
  kExitVerificationFailed = 2, // a reported check came back false
  kExitTheoremFault = 3,       // a guaranteed identity failed (library bug)
};

struct CommandConfig {
  std::string subcommand;
  std::optional<std::string> input;  // path to a JSON document
  std::optional<std::string> f_expr;
  std::optional<std::string> p_expr;
  std::size_t dim = 1;
  std::size_t truncation = 100;
  std::size_t m_min = 2;
  std::size_t m_max = 10;
  std::uint64_t seed = 0;
  std::string format = "json";  // json | csv | text
  double tolerance = 1e-6;      // relative Rayleigh cross-check tolerance for ks-scan
  std::size_t k = 2;
  std::size_t beta1 = 0;
  std::size_t beta2 = 0;
  double tau = 0.0;
  std::size_t cases = 100;  // random cases per property in `verify`
};

/// FISCHERLAB_SEED, when set to an unsigned integer, overrides the seed.
inline void apply_environment(CommandConfig& cfg) {
  if (const char* env = std::getenv("FISCHERLAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) cfg.seed = v;
    } catch (const std::exception&) {
    }
  }
}

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("invalid JSON in '" + path + "': " + e.what());
  }
}

inline Polynomial polynomial_argument(const CommandConfig& cfg, const std::optional<std::string>& expr,
                                      const json* doc, const char* key) {
  if (expr) return parse_expression(*expr, cfg.dim);
  if (doc && doc->contains(key)) {
    const auto& v = (*doc)[key];
    if (v.is_string()) return parse_expression(v.get<std::string>(), doc->value("dim", cfg.dim));
    return from_document(v);
  }
  throw DomainError(std::string("missing polynomial '") + key + "'");
}

inline int run_decompose(const CommandConfig& cfg, std::ostream& out) {
  std::optional<json> doc;
  if (cfg.input) doc = read_json_file(*cfg.input);
  const Polynomial f = polynomial_argument(cfg, cfg.f_expr, doc ? &*doc : nullptr, "f");
  const Polynomial p = polynomial_argument(cfg, cfg.p_expr, doc ? &*doc : nullptr, "P");
  const auto d = decompose(f, p);
  // Flags are recomputed here, independently of the solver's own certificate.
  const bool reconstruction = (f - p * d.q - d.r).is_zero();
  const bool kernel = apply_operator(conjugate_coefficients(principal_part(p)), d.r).is_zero();
  const bool ok = reconstruction && kernel && d.reconstruction_check && d.residual_check;
  if (cfg.format == "text") {
    out << "q = " << print_expression(d.q) << "\nr = " << print_expression(d.r) << "\nreconstruction_check = "
        << std::boolalpha << reconstruction << "\nresidual_check = " << kernel << '\n';
  } else if (cfg.format == "json") {
    out << json{{"f", print_expression(f)},
                {"P", print_expression(p)},
                {"q", print_expression(d.q)},
                {"r", print_expression(d.r)},
                {"q_document", to_document(d.q)},
                {"r_document", to_document(d.r)},
                {"reconstruction_check", reconstruction},
                {"residual_check", kernel}}
               .dump(2)
        << '\n';
  } else {
    throw DomainError("decompose supports --format json or text");
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

inline int run_ks_scan(const CommandConfig& cfg, std::ostream& out) {
  std::optional<json> doc;
  if (cfg.input) doc = read_json_file(*cfg.input);
  const Polynomial p = polynomial_argument(cfg, cfg.p_expr, doc ? &*doc : nullptr, "P");
  const auto rep = ks_scan(p, cfg.m_min, cfg.m_max, cfg.tolerance);
  if (cfg.format == "csv") {
    out << to_csv(rep);
  } else if (cfg.format == "text") {
    for (const auto& e : rep.entries)
      out << "m=" << e.m << " dim=" << e.dim << " mu=" << e.mu << " certified=" << std::boolalpha << e.certified << '\n';
    out << "certified C=" << rep.c_certified << " tau=0\n";
    if (rep.tau_fit) out << "fitted C=" << *rep.c_fit << " tau=" << *rep.tau_fit << '\n';
  } else {
    out << to_json(rep).dump(2) << '\n';
  }
  return rep.all_certified ? kExitOk : kExitVerificationFailed;
}

inline int run_order(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.input) throw DomainError("order needs --input with a graded series document");
  const auto series = series_from_document(read_json_file(*cfg.input));
  SupNormOptions opt;
  opt.seed = cfg.seed;
  const std::size_t m = std::min(cfg.truncation, series.truncation());
  const auto rep = growth_report(series, m, opt);
  if (cfg.format == "csv") {
    out << to_csv(rep);
  } else if (cfg.format == "text") {
    out << "rho_estimate=" << rep.order.rho << " limsup_ratio=" << rep.order.limsup_ratio << '\n';
  } else {
    out << to_json(rep).dump(2) << '\n';
  }
  return kExitOk;
}

inline int run_bound(const CommandConfig& cfg, std::ostream& out) {
  const auto b = uniqueness_order_bound(cfg.k, cfg.beta1, cfg.beta2, cfg.tau);
  const auto tau_ok = check_tau_admissible(cfg.k, cfg.tau, cfg.dim);
  if (cfg.format == "text") {
    out << "rho_max=" << b.rho_max << " branch=" << b.branch << " in_expected_range=" << std::boolalpha
        << b.in_expected_range << " tau_admissible=" << tau_ok.admissible << '\n';
  } else {
    out << json{{"k", cfg.k},
                {"beta1", cfg.beta1},
                {"beta2", cfg.beta2},
                {"tau", cfg.tau},
                {"rho_max", b.rho_max},
                {"branch", b.branch},
                {"in_expected_range", b.in_expected_range},
                {"tau_admissible", tau_ok.admissible},
                {"tau_reason", tau_ok.reason}}
               .dump(2)
        << '\n';
  }
  return b.in_expected_range ? kExitOk : kExitVerificationFailed;
}

inline int run_lemma_check(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.input) throw DomainError("lemma-check needs --input with {sequence, config}");
  const json doc = read_json_file(*cfg.input);
  if (!doc.contains("sequence") || !doc["sequence"].is_array()) throw DomainError("lemma-check: missing 'sequence'");
  if (!doc.contains("config")) throw DomainError("lemma-check: missing 'config'");
  std::vector<double> a;
  for (const auto& v : doc["sequence"]) {
    if (!v.is_number()) throw DomainError("lemma-check: sequence entries must be numbers");
    a.push_back(v.get<double>());
  }
  const auto lemma = lemma_config_from_json(doc["config"]);
  const std::size_t m_max = doc.value("m_max", a.size() > lemma.beta_high() ? a.size() - lemma.beta_high() - 1 : 0);
  json report;
  report["hypothesis_i"] = to_json(check_hypothesis_i(a, lemma, m_max));
  report["hypothesis_ii"] = to_json(check_hypothesis_ii(a, lemma, m_max));
  const auto regime = classify_regime(lemma);
  report["regime"] = {{"regime", to_string(regime.regime)},
                      {"conclusion_applies", regime.conclusion_applies},
                      {"reason", regime.reason}};
  if (regime.conclusion_applies)
    report["probe"] = to_json(limit_probe(lemma, doc.value("probe_m", std::size_t{1}), doc.value("probe_j_max", std::size_t{200})));
  const auto consistency = conclusion_consistency(a, lemma, m_max);
  report["consistency"] = {{"status", to_string(consistency.status)}, {"reason", consistency.reason}};
  if (consistency.first_positive) report["consistency"]["first_positive"] = *consistency.first_positive;
  out << report.dump(2) << '\n';
  return consistency.status == Consistency::alert ? kExitVerificationFailed : kExitOk;
}

struct SuiteCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

inline std::vector<SuiteCheck> exact_identity_suite(std::uint64_t seed, std::size_t cases) {
  std::vector<SuiteCheck> checks;
  PolynomialSampler rng(seed);

  SuiteCheck monomials{"monomial apolar values", 0, 0};
  for (std::size_t d = 1; d <= 3; ++d) {
    std::vector<MultiIndex> all;
    for (std::size_t m = 0; m <= 6; ++m)
      for (auto& a : monomials_of_degree(d, m)) all.push_back(a);
    for (const auto& a : all)
      for (const auto& b : all) {
        ++monomials.cases;
        const auto v = apolar_inner(Polynomial::monomial(a), Polynomial::monomial(b));
        const ComplexRational expect = a == b ? ComplexRational(Rational(a.factorial())) : ComplexRational();
        if (v != expect) ++monomials.failures;
      }
  }
  checks.push_back(monomials);

  SuiteCheck adjoint{"adjoint identity", 0, 0};
  for (std::size_t t = 0; t < cases; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    ++adjoint.cases;
    if (!verify_adjoint(rng.sparse(d, 5), rng.sparse(d, 5), rng.sparse(d, 5)).holds) ++adjoint.failures;
  }
  checks.push_back(adjoint);

  SuiteCheck beauzamy{"Beauzamy bound", 0, 0};
  for (std::size_t t = 0; t < cases; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto p = rng.homogeneous(d, rng.uniform(0, 3));
    const auto f = rng.homogeneous(d, rng.uniform(0, 4));
    ++beauzamy.cases;
    if (apolar_norm_sq(p * f) > beauzamy_bound(p, f)) ++beauzamy.failures;
  }
  checks.push_back(beauzamy);

  SuiteCheck roundtrip{"decomposition round-trip", 0, 0};
  for (std::size_t t = 0; t < cases / 4 + 1; ++t) {
    const std::size_t d = rng.uniform(1, 3);
    const auto p = rng.nonhomogeneous(d, rng.uniform(1, 3));
    const auto g = rng.sparse(d, 2, 3);
    const auto h = decompose(rng.sparse(d, 4, 4), p).r;
    const auto back = decompose(p * g + h, p);
    ++roundtrip.cases;
    if (back.q != g || back.r != h) ++roundtrip.failures;
  }
  checks.push_back(roundtrip);

  SuiteCheck anchors{"hand-verified anchors", 3, 0};
  {
    const auto p = parse_expression("z1^2 + 1", 1);
    const auto a = decompose(parse_expression("z1^2", 1), p);
    if (a.q != parse_expression("1", 1) || a.r != parse_expression("-1", 1)) ++anchors.failures;
    const auto b = decompose(parse_expression("z1^4", 1), p);
    if (b.q != parse_expression("z1^2 - 1", 1) || b.r != parse_expression("1", 1)) ++anchors.failures;
    const auto c = decompose_homogeneous(parse_expression("z1^2", 2), parse_expression("z1^2 + z2^2", 2));
    if (c.q != parse_expression("1/2", 2) || c.r != parse_expression("1/2*z1^2 - 1/2*z2^2", 2)) ++anchors.failures;
  }
  checks.push_back(anchors);
  return checks;
}

inline int run_verify(const CommandConfig& cfg, std::ostream& out) {
  const auto checks = exact_identity_suite(cfg.seed, cfg.cases);
  bool ok = true;
  json rows = json::array();
  for (const auto& c : checks) {
    ok = ok && c.failures == 0;
    rows.push_back({{"check", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"passed", c.failures == 0}});
  }
  if (cfg.format == "text") {
    for (const auto& c : checks)
      out << (c.failures == 0 ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)\n";
  } else {
    out << json{{"seed", cfg.seed}, {"checks", rows}, {"passed", ok}}.dump(2) << '\n';
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace detail

/// Executes one subcommand; diagnostics go to err. Never throws.
inline int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
      throw DomainError("unknown format '" + cfg.format + "'");
    if (cfg.subcommand == "decompose") return detail::run_decompose(cfg, out);
    if (cfg.subcommand == "ks-scan") return detail::run_ks_scan(cfg, out);
    if (cfg.subcommand == "order") return detail::run_order(cfg, out);
    if (cfg.subcommand == "verify") return detail::run_verify(cfg, out);
    if (cfg.subcommand == "lemma-check") return detail::run_lemma_check(cfg, out);
    if (cfg.subcommand == "bound") return detail::run_bound(cfg, out);
    throw DomainError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const TheoremViolation& e) {
    err << "fault: " << e.what() << '\n';
    return kExitTheoremFault;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace fischerlab
