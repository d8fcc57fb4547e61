#include <CLI11.hpp>

#include "commands.hpp"
#include "pev/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pev: stochastic projection evolution of quantum states"};
  app.set_version_flag("--version", pev::kVersion);
  app.require_subcommand(1);

  pev::cli::CommonOptions common;
  pev::cli::DoubleslitOptions ds;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "configuration file")
        ->required();
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--seed", common.seed, "override the config seed");
    sub->add_option("--tolerance", common.tolerance_overrides,
                    "NAME=VALUE tolerance override (repeatable)");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "run invariant suites on stored inputs");
  add_common(validate);

  CLI::App* evolve =
      app.add_subcommand("evolve", "sample evolution paths of a state");
  add_common(evolve);

  CLI::App* doubleslit = app.add_subcommand(
      "doubleslit", "temporal double slit detection probability grids");
  add_common(doubleslit);
  doubleslit->add_option("--factor", ds.factor,
                         "factor selection: full, temporal or spatial");
  doubleslit->add_option("--epsilon-t", ds.epsilon_t,
                         "opening separation with unit suffix, e.g. 1e-10s");

  CLI::App* uncertainty = app.add_subcommand(
      "uncertainty", "variance product sweeps against the Robertson bound");
  add_common(uncertainty);

  CLI::App* causality =
      app.add_subcommand("causality", "light cone probability of packets");
  add_common(causality);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 returns 0 for --help/--version.
    return code == 0 ? pev::cli::kExitOk : pev::cli::kExitConfig;
  }

  if (validate->parsed()) return pev::cli::cmd_validate(common);
  if (evolve->parsed()) return pev::cli::cmd_evolve(common);
  if (doubleslit->parsed()) return pev::cli::cmd_doubleslit(common, ds);
  if (uncertainty->parsed()) return pev::cli::cmd_uncertainty(common);
  if (causality->parsed()) return pev::cli::cmd_causality(common);
  return pev::cli::kExitConfig;
}
