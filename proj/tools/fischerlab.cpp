#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fischerlab/cli.hpp"

int main(int argc, char** argv) {
  fischerlab::CommandConfig cfg;
  std::string f_expr, p_expr, input;

  CLI::App app{"Exact Fischer decompositions, Khavinson-Shapiro scans and growth estimates"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--dim", cfg.dim, "number of variables z1..zd")->check(CLI::PositiveNumber);
    sub->add_option("--input", input, "JSON input document");
    sub->add_option("--format", cfg.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", cfg.seed, "RNG seed (FISCHERLAB_SEED overrides)");
  };

  auto* decompose = app.add_subcommand("decompose", "split f = P q + r with P_k*(D) r = 0");
  common(decompose);
  decompose->add_option("--f", f_expr, "dividend, e.g. \"z1^4\"");
  decompose->add_option("--P", p_expr, "divisor, e.g. \"z1^2 + 1\"");

  auto* ks = app.add_subcommand("ks-scan", "smallest singular values of g -> P_k g over a degree range");
  common(ks);
  ks->add_option("--P", p_expr, "homogeneous P_k");
  ks->add_option("--m-min", cfg.m_min, "first degree");
  ks->add_option("--m-max", cfg.m_max, "last degree");
  ks->add_option("--tolerance", cfg.tolerance, "relative Rayleigh cross-check tolerance");

  auto* order = app.add_subcommand("order", "order-of-growth estimate for a truncated series");
  common(order);
  order->add_option("--truncation", cfg.truncation, "truncation degree M");

  auto* verify = app.add_subcommand("verify", "run the exact-identity suite");
  common(verify);
  verify->add_option("--cases", cfg.cases, "random cases per property");

  auto* lemma = app.add_subcommand("lemma-check", "check the sequence lemma hypotheses on data");
  common(lemma);

  auto* bound = app.add_subcommand("bound", "largest order covered by the uniqueness theorem");
  common(bound);
  bound->add_option("--k", cfg.k, "degree of P")->required();
  bound->add_option("--beta1", cfg.beta1, "lowest nonzero slice below k");
  bound->add_option("--beta2", cfg.beta2, "highest nonzero slice below k");
  bound->add_option("--tau", cfg.tau, "Khavinson-Shapiro exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every usage error maps to the input-error status.
    return app.exit(e) == 0 ? fischerlab::kExitOk : fischerlab::kExitInputError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (!f_expr.empty()) cfg.f_expr = f_expr;
  if (!p_expr.empty()) cfg.p_expr = p_expr;
  if (!input.empty()) cfg.input = input;
  fischerlab::apply_environment(cfg);
  return fischerlab::run(cfg, std::cout, std::cerr);
}
