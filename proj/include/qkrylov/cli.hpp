#pragma once

// Experiment runners behind the `qkrylov` command-line tool. Each command
// writes one CSV into RunConfig::output_dir and returns a process exit code.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "qkrylov/analysis.hpp"
#include "qkrylov/hamiltonian.hpp"

namespace qkrylov::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kUsageError = 2 };

struct RunConfig {
  // Builtin name or path to a Hamiltonian spec file. For `table1`, the form
  // NAME=path replaces one builtin's definition while keeping its expected row.
  std::string hamiltonian = "H_1";
  std::uint64_t seed = 42;
  std::size_t n_states = 10;
  std::size_t n_times = 25;
  double t_max = 10.0;
  double dt = kDefaultSamplingStep;
  double rank_tol = kDefaultRankTol;
  double eig_tol = kDefaultEigTol;
  double lambda = kDefaultLambda;
  std::filesystem::path output_dir = ".";
  // "haar" or a computational-basis bitstring such as "0000".
  std::string initial_state = "haar";
  ThetaGrid theta_grid = ThetaGrid::endpoint;
  double effdim_t_max = 8.0 * std::numbers::pi;
  std::size_t effdim_points = 200;
  double spread_t_max = 4.0 * std::numbers::pi;
  std::size_t spread_points = 500;

  /// Throws std::invalid_argument if a tolerance is not positive, lambda is
  /// outside (0, 1) or a count is zero.
  void validate() const;
};

/// Applies `key = value` lines ('#' comments, blank lines ignored) on top of
/// `config`. Unknown keys and malformed values throw std::invalid_argument.
void apply_config_text(std::istream& in, RunConfig& config);
void apply_config_file(const std::filesystem::path& path, RunConfig& config);

/// Sets one config key from its text value (keys as in the config file).
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

struct ResolvedHamiltonian {
  std::string name;  // display name for builtins, file stem otherwise
  HamiltonianSpec spec;
};

ResolvedHamiltonian resolve_hamiltonian(const std::string& name_or_path);

/// Fixed-format decimal: round-trippable, 17 significant digits, '.' separator.
std::string format_number(double value);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

struct Table1Row {
  std::string hamiltonian;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t expected = 0;
  bool match = false;
};

/// Grade m and distinct-eigenvalue count d for the seven builtins.
std::vector<Table1Row> compute_table1(const RunConfig& config);

int cmd_table1(const RunConfig& config, std::ostream& log);
int cmd_reconstruct(const RunConfig& config, std::ostream& log);
int cmd_effdim(const RunConfig& config, std::ostream& log);
int cmd_spread(const RunConfig& config, std::ostream& log);

}  // namespace qkrylov::cli
