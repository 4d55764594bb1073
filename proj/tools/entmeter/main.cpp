#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

void add_norm_flags(CLI::App* cmd, entmeter::NormOptions& opts) {
  cmd->add_option("--restarts", opts.restarts, "Random restarts of the product-state optimizer")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opts.tol, "Relative convergence tolerance per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sweeps", opts.max_sweeps, "Maximum sweeps per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "Seed for restart initial states");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = entmeter::cli;

  CLI::App app{"Operator-based entanglement measure and order index"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(1);

  cli::MeasureFlags flags;
  flags.norm.threads = cli::threads_from_env();
  std::string mode = "variational";
  std::string input;

  auto* measure = app.add_subcommand("measure", "Compute epsilon for a state spec");
  measure->add_option("input", input, "StateSpec JSON file")->required();
  measure->add_option("--mode", mode, "Restricted-norm mode")
      ->check(CLI::IsMember({"variational", "basis"}));
  measure->add_option("--base", flags.base, "Logarithm base")
      ->check(CLI::IsMember({"2", "e", "10"}));
  measure->add_flag("--oracle-check", flags.oracle_check,
                    "Cross-check the norm with random product-state sampling");
  measure->add_flag("--strict", flags.strict, "Fail with exit 4 when the optimizer does not converge");
  add_norm_flags(measure, flags.norm);

  auto* order = app.add_subcommand("order-index", "Compute omega for a state spec");
  order->add_option("input", input, "StateSpec JSON file")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Recompute the worked-example table");
  add_norm_flags(reproduce, flags.norm);

  std::string seeds = "0..19";
  std::vector<std::string> properties;
  auto* verify = app.add_subcommand("verify", "Run the property audits over seeds");
  verify->add_option("--seeds", seeds, "Seeds, e.g. 0..19 or 0,3,7");
  verify->add_option("--property", properties, "Restrict to these properties");
  add_norm_flags(verify, flags.norm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalidInput;
  }

  if (*measure) {
    flags.mode = entmeter::parse_norm_mode(mode);
    return cli::cmd_measure(input, flags, std::cout, std::cerr);
  }
  if (*order) return cli::cmd_order_index(input, std::cout, std::cerr);
  if (*reproduce) return cli::cmd_reproduce(flags.norm, std::cout, std::cerr);
  return cli::cmd_verify(seeds, properties, flags.norm, std::cout, std::cerr);
}
