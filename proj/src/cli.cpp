#include "qkrylov/cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "qkrylov/evolution.hpp"
#include "qkrylov/krylov.hpp"

namespace qkrylov::cli {

namespace {

// Grade / distinct-eigenvalue count of each builtin Hamiltonian.
const std::map<std::string, std::size_t> kExpectedTable1 = {
    {"H_1", 2}, {"H_2", 3}, {"H_3", 4}, {"H_4", 5}, {"H_I1", 9}, {"H_I2", 16}, {"H_I3", 15},
};

constexpr double kReconstructionTol = 1e-8;
constexpr double kBoundSlack = 1e-10;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("config key '" + key + "': bad number '" + text + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("config key '" + key + "': bad non-negative integer '" + text +
                                "'");
  }
  return v;
}

StateVector initial_state_for(const RunConfig& config, const HamiltonianSpec& spec) {
  const Index dim = Index{1} << spec.n_qubits;
  if (config.initial_state == "haar") {
    auto rng = state_stream(config.seed, 0);
    return random_state(dim, rng);
  }
  const std::string& bits = config.initial_state;
  if (bits.size() != spec.n_qubits || bits.find_first_not_of("01") != std::string::npos) {
    throw std::invalid_argument("initial_state must be 'haar' or a bitstring of length " +
                                std::to_string(spec.n_qubits) + ", got '" + bits + "'");
  }
  Index index = 0;
  for (char c : bits) index = (index << 1) | (c == '1' ? 1 : 0);
  return basis_state(dim, index);
}

std::filesystem::path output_path(const RunConfig& config, const std::string& file) {
  std::filesystem::create_directories(config.output_dir);
  return config.output_dir / file;
}

}  // namespace

void RunConfig::validate() const {
  if (!(rank_tol > 0.0) || !(eig_tol > 0.0)) throw std::invalid_argument("tolerances must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  if (n_states < 1 || n_times < 1) throw std::invalid_argument("n_states and n_times must be >= 1");
  if (!(effdim_t_max > 0.0) || effdim_points < 1) {
    throw std::invalid_argument("effdim grid needs effdim_t_max > 0 and effdim_points >= 1");
  }
  if (!(spread_t_max > 0.0) || spread_points < 2) {
    throw std::invalid_argument("spread grid needs spread_t_max > 0 and spread_points >= 2");
  }
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "hamiltonian") config.hamiltonian = value;
  else if (key == "seed") config.seed = parse_uint(key, value);
  else if (key == "n_states") config.n_states = parse_uint(key, value);
  else if (key == "n_times") config.n_times = parse_uint(key, value);
  else if (key == "t_max") config.t_max = parse_double(key, value);
  else if (key == "dt") config.dt = parse_double(key, value);
  else if (key == "rank_tol") config.rank_tol = parse_double(key, value);
  else if (key == "eig_tol") config.eig_tol = parse_double(key, value);
  else if (key == "lambda") config.lambda = parse_double(key, value);
  else if (key == "output_dir") config.output_dir = value;
  else if (key == "initial_state") config.initial_state = value;
  else if (key == "theta_grid") {
    if (value == "endpoint") config.theta_grid = ThetaGrid::endpoint;
    else if (value == "shifted") config.theta_grid = ThetaGrid::shifted;
    else throw std::invalid_argument("theta_grid must be 'endpoint' or 'shifted'");
  }
  else if (key == "effdim_t_max") config.effdim_t_max = parse_double(key, value);
  else if (key == "effdim_points") config.effdim_points = parse_uint(key, value);
  else if (key == "spread_t_max") config.spread_t_max = parse_double(key, value);
  else if (key == "spread_points") config.spread_points = parse_uint(key, value);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

void apply_config_text(std::istream& in, RunConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    set_config_value(config, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
}

void apply_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  apply_config_text(in, config);
}

ResolvedHamiltonian resolve_hamiltonian(const std::string& name_or_path) {
  if (const std::string canonical = canonical_hamiltonian_name(name_or_path); !canonical.empty()) {
    return {canonical, builtin_hamiltonian(canonical)};
  }
  const std::filesystem::path path(name_or_path);
  if (std::filesystem::is_regular_file(path)) {
    return {path.stem().string(), load_hamiltonian_spec(path)};
  }
  // Reuse the builtin lookup's diagnostic, which lists the valid names.
  builtin_hamiltonian(name_or_path);
  return {};
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<Table1Row> compute_table1(const RunConfig& config) {
  // Optional NAME=path override of one builtin.
  std::string override_name;
  std::filesystem::path override_path;
  if (const auto eq = config.hamiltonian.find('='); eq != std::string::npos) {
    override_name = canonical_hamiltonian_name(config.hamiltonian.substr(0, eq));
    if (override_name.empty()) {
      builtin_hamiltonian(config.hamiltonian.substr(0, eq));  // throws with the valid names
    }
    override_path = config.hamiltonian.substr(eq + 1);
  }

  std::vector<Table1Row> rows;
  const auto& names = builtin_hamiltonian_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    const HamiltonianSpec spec =
        name == override_name ? load_hamiltonian_spec(override_path) : builtin_hamiltonian(name);
    const Propagator prop(build_hamiltonian(spec));
    auto rng = state_stream(config.seed, i);
    const StateVector psi0 = random_state(prop.dim(), rng);

    Table1Row row;
    row.hamiltonian = name;
    row.m = sampled_basis(prop, psi0, config.dt, config.rank_tol).grade;
    row.d = count_distinct_eigenvalues(prop.spectral(), config.eig_tol);
    row.expected = kExpectedTable1.at(name);
    row.match = row.m == row.expected && row.d == row.expected;
    rows.push_back(row);
  }
  return rows;
}

int cmd_table1(const RunConfig& config, std::ostream& log) {
  const auto rows = compute_table1(config);
  std::ostringstream csv;
  csv << "hamiltonian,m,d,match\n";
  bool all_match = true;
  for (const auto& r : rows) {
    csv << r.hamiltonian << ',' << r.m << ',' << r.d << ',' << (r.match ? "true" : "false") << '\n';
    if (!r.match) {
      all_match = false;
      log << "mismatch: " << r.hamiltonian << " m=" << r.m << " d=" << r.d
          << " expected " << r.expected << '\n';
    }
  }
  const auto path = output_path(config, "table1.csv");
  write_file_atomically(path, csv.str());
  log << "wrote " << path.string() << (all_match ? " (all rows match)" : " (MISMATCH)") << '\n';
  return all_match ? kSuccess : kValidationFailure;
}

int cmd_reconstruct(const RunConfig& config, std::ostream& log) {
  const auto resolved = resolve_hamiltonian(config.hamiltonian);
  const Propagator prop(build_hamiltonian(resolved.spec));

  ExperimentOptions options;
  options.name = resolved.name;
  options.n_states = config.n_states;
  options.n_times = config.n_times;
  options.t_max = config.t_max;
  options.dt = config.dt;
  options.rank_tol = config.rank_tol;
  options.eig_tol = config.eig_tol;
  options.seed = config.seed;
  const auto report = reconstruction_error_experiment(prop, options);

  std::ostringstream csv;
  csv << "l,r_mean,r_std\n";
  bool ok = true;
  for (std::size_t i = 0; i < report.r_curve.size(); ++i) {
    const auto& p = report.r_curve[i];
    csv << p.l << ',' << format_number(p.r_mean) << ',' << format_number(p.r_std) << '\n';
    if (i > 0 && p.r_mean > report.r_curve[i - 1].r_mean + kBoundSlack) ok = false;
  }
  if (report.r_curve.back().r_mean > kReconstructionTol) ok = false;

  const auto path = output_path(config, "reconstruct_" + resolved.name + ".csv");
  write_file_atomically(path, csv.str());
  log << "wrote " << path.string() << ": m=" << report.m << " d=" << report.d
      << " r_mean(m)=" << format_number(report.r_curve.back().r_mean) << '\n';
  if (report.any_truncated) log << "warning: time grid exhausted before the rank plateau\n";
  if (!ok) log << "invariant breach: r_mean(m) above " << kReconstructionTol << " or not monotone\n";
  return ok ? kSuccess : kValidationFailure;
}

int cmd_effdim(const RunConfig& config, std::ostream& log) {
  const auto resolved = resolve_hamiltonian(config.hamiltonian);
  const Propagator prop(build_hamiltonian(resolved.spec));
  const StateVector psi0 = initial_state_for(config, resolved.spec);

  std::vector<double> grid(config.effdim_points);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid[k] = static_cast<double>(k + 1) * config.effdim_t_max /
              static_cast<double>(config.effdim_points);
  }
  EffectiveDimensionOptions options;
  options.lambda = config.lambda;
  options.grid = config.theta_grid;
  options.dt = config.dt;
  options.rank_tol = config.rank_tol;
  options.eig_tol = config.eig_tol;
  const auto curve = effective_dimension_sweep(prop, psi0, grid, options);

  std::ostringstream csv;
  csv << "T,m_eff\n";
  bool ok = true;
  for (std::size_t k = 0; k < curve.T_values.size(); ++k) {
    const double v = curve.m_eff_values[k];
    csv << format_number(curve.T_values[k]) << ',' << format_number(v) << '\n';
    if (v < 1.0 - kBoundSlack || v > static_cast<double>(curve.m) + kBoundSlack) ok = false;
  }
  const auto path = output_path(config, "effdim_" + resolved.name + ".csv");
  write_file_atomically(path, csv.str());
  log << "wrote " << path.string() << ": m=" << curve.m << " d=" << curve.d << '\n';
  if (!ok) log << "invariant breach: m_eff outside [1, m]\n";
  return ok ? kSuccess : kValidationFailure;
}

int cmd_spread(const RunConfig& config, std::ostream& log) {
  const auto resolved = resolve_hamiltonian(config.hamiltonian);
  const HermitianOperator h = build_hamiltonian(resolved.spec);
  const Propagator prop(h);
  const StateVector psi0 = initial_state_for(config, resolved.spec);
  const LanczosData ld = lanczos(h, psi0, config.rank_tol);
  const double upper = static_cast<double>(ld.basis.grade - 1);

  std::ostringstream csv;
  csv << "t,C_S\n";
  bool ok = true;
  const double step = config.spread_t_max / static_cast<double>(config.spread_points - 1);
  for (std::size_t k = 0; k < config.spread_points; ++k) {
    const double t = static_cast<double>(k) * step;
    const double c = spread_complexity(ld, prop, psi0, t);
    csv << format_number(t) << ',' << format_number(c) << '\n';
    if (c < -kBoundSlack || c > upper + kBoundSlack) ok = false;
  }
  const auto path = output_path(config, "spread_" + resolved.name + ".csv");
  write_file_atomically(path, csv.str());
  log << "wrote " << path.string() << ": Lanczos dimension " << ld.basis.grade << '\n';
  if (!ok) log << "invariant breach: C_S outside [0, m-1]\n";
  return ok ? kSuccess : kValidationFailure;
}

}  // namespace qkrylov::cli
