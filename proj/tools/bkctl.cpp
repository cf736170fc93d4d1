// bkctl: exact-arithmetic computations with generalized Breuil-Kisin modules
// over truncations of Z_p[[u]]; lengths, sweeps, worked examples, and the
// full invariant suite.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "bklib/cli.hpp"

using namespace bk;

int main(int argc, char** argv) {
  CLI::App app{"bkctl: Breuil-Kisin module torsion-length toolkit"};
  app.require_subcommand(1);

  cli::CommonFlags flags;
  std::optional<int64_t> budget_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", flags.spec_file, "spec file (JSON, format_version 1)");
    sub->add_option("--out", flags.out_file, "write a machine-readable report here");
    sub->add_option("--format", flags.format, "report format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", flags.jobs, "worker threads (0 = all processors, 1 = serial)");
    sub->add_option("--budget", budget_flag, "oracle element budget (env BKCTL_BUDGET)");
    sub->add_option("--n-max", flags.n_max, "largest Frobenius twist");
  };

  std::string module_name, example_name, ledger_name;
  int64_t example_p = 2;
  bool inject_mutant = false, inject_fault = false;
  std::string verify_level = "fast";

  auto* c_lengths = app.add_subcommand("lengths", "per-twist E-torsion and mod-E lengths");
  add_common(c_lengths);
  c_lengths->add_option("module", module_name, "module name from the spec file")->required();

  auto* c_sweep = app.add_subcommand(
      "sweep-beta", "exhaustive small-case check of the length monotonicity conjecture");
  add_common(c_sweep);
  c_sweep->add_flag("--inject-mutant", inject_mutant,
                    "test hook: add one synthetic violating row");

  auto* c_example = app.add_subcommand("example", "worked examples with verdicts");
  add_common(c_example);
  c_example->add_option("name", example_name, "li-petrov | bk-group-scheme | p-torsion")
      ->required();
  c_example->add_option("-p,--prime", example_p, "prime p");

  auto* c_ledger = app.add_subcommand("ledger", "stability and inequality checks on a ledger");
  add_common(c_ledger);
  c_ledger->add_option("name", ledger_name, "ledger name from the spec file")->required();

  auto* c_verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(c_verify);
  c_verify->add_option("level", verify_level, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  c_verify->add_flag("--inject-fault", inject_fault,
                     "test hook: off-by-one fast path, the suite must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitUsage;
  }

  flags.budget = cli::effective_budget(budget_flag);

  try {
    if (*c_lengths) return cli::cmd_lengths(flags, module_name, std::cout);
    if (*c_sweep) return cli::cmd_sweep_beta(flags, inject_mutant, std::cout);
    if (*c_example) return cli::cmd_example(flags, example_name, example_p, std::cout);
    if (*c_ledger) return cli::cmd_ledger(flags, ledger_name, std::cout);
    if (*c_verify)
      return cli::cmd_verify(verify_level, flags.jobs, flags.budget, inject_fault, std::cout);
  } catch (const error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return cli::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
