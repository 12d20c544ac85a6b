#include <CLI11.hpp>

#include <iostream>

#include "levinf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Levi normal forms of truncated Poisson structures and Lie algebroids"};
  app.require_subcommand(1);

  levinf::CliOptions opts;
  std::string path;
  std::string format = "text";

  auto common = [&](CLI::App* sub, bool run_flags) {
    sub->add_option("file", path, "problem file (run log for diagnostics)")->required();
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output,-o", opts.output, "output file");
    if (run_flags) {
      sub->add_option("--steps", opts.steps, "number of normalization steps");
      sub->add_option("--degree", opts.degree, "truncation degree D");
      sub->add_option("--schedule", opts.schedule, "doubling or single");
      sub->add_option("--field", opts.field, "rational or gaussian");
      sub->add_option("--seed", opts.seed, "random seed (recorded in the output)");
    }
  };
  auto* check = app.add_subcommand("check", "validate a problem file");
  common(check, true);
  auto* normalize = app.add_subcommand("normalize", "run the normalization and write a result file");
  common(normalize, true);
  auto* diagnostics = app.add_subcommand("diagnostics", "norm tables of a result file");
  common(diagnostics, false);
  diagnostics->add_option("--rho", opts.rho, "polydisc radius");
  diagnostics->add_option("--epsilon", opts.epsilon, "radius shrink parameter");
  auto* perturb = app.add_subcommand("perturb", "push a problem forward by a random near-identity map");
  common(perturb, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  opts.format = format == "json" ? levinf::OutputFormat::Json : levinf::OutputFormat::Text;

  if (check->parsed()) return levinf::cmd_check(path, opts, std::cout, std::cerr);
  if (normalize->parsed()) return levinf::cmd_normalize(path, opts, std::cout, std::cerr);
  if (diagnostics->parsed()) return levinf::cmd_diagnostics(path, opts, std::cout, std::cerr);
  return levinf::cmd_perturb(path, opts, std::cout, std::cerr);
}
