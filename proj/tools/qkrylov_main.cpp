// qkrylov: sampled Krylov spaces of quantum time evolution.
//
//   qkrylov table1      grade m and distinct-eigenvalue count d of the builtins
//   qkrylov reconstruct averaged reconstruction error r(l), l = 0..m
//   qkrylov effdim      effective dimension m_eff(T)
//   qkrylov spread      spread complexity C_S(t) over the Lanczos basis
//
// Exit codes: 0 success, 1 validation failure, 2 usage or parse error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qkrylov/cli.hpp"

namespace {

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> hamiltonian;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<std::string> out;
  std::optional<std::string> state;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value run configuration file");
  cmd->add_option("--hamiltonian", o.hamiltonian, "builtin name (H_1..H_4, H_I1..H_I3) or spec file");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--t-max", o.t_max, "upper bound of random reconstruction times");
  cmd->add_option("--dt", o.dt, "sampling step of the time grid");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--state", o.state, "initial state: haar or a bitstring such as 0000");
}

qkrylov::cli::RunConfig build_config(const Overrides& o) {
  qkrylov::cli::RunConfig config;
  if (o.config_path) qkrylov::cli::apply_config_file(*o.config_path, config);
  if (o.hamiltonian) config.hamiltonian = *o.hamiltonian;
  if (o.seed) config.seed = *o.seed;
  if (o.t_max) config.t_max = *o.t_max;
  if (o.dt) config.dt = *o.dt;
  if (o.out) config.output_dir = *o.out;
  if (o.state) config.initial_state = *o.state;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurable Krylov spaces of quantum time evolution"};
  app.require_subcommand(1);

  Overrides overrides;
  auto* table1 = app.add_subcommand("table1", "grade and distinct-eigenvalue count of every builtin");
  auto* reconstruct = app.add_subcommand("reconstruct", "averaged reconstruction error r(l)");
  auto* effdim = app.add_subcommand("effdim", "effective Krylov dimension m_eff(T)");
  auto* spread = app.add_subcommand("spread", "spread complexity C_S(t)");
  for (auto* cmd : {table1, reconstruct, effdim, spread}) add_common_options(cmd, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qkrylov::cli::kUsageError;
  }

  try {
    const auto config = build_config(overrides);
    if (table1->parsed()) return qkrylov::cli::cmd_table1(config, std::cerr);
    if (reconstruct->parsed()) return qkrylov::cli::cmd_reconstruct(config, std::cerr);
    if (effdim->parsed()) return qkrylov::cli::cmd_effdim(config, std::cerr);
    if (spread->parsed()) return qkrylov::cli::cmd_spread(config, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qkrylov::cli::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qkrylov::cli::kValidationFailure;
  }
  return qkrylov::cli::kUsageError;
}
