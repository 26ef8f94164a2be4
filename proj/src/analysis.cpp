#include "qkrylov/analysis.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qkrylov {

std::size_t count_distinct_eigenvalues(const SpectralDecomposition& spec, double eig_tol) {
  return cluster_eigenvalues(spec.eigenvalues, eig_tol).size();
}

StateVector reconstruct(std::span<const StateVector> w, const StateVector& target, std::size_t l) {
  if (l > w.size()) {
    throw std::invalid_argument("reconstruction order " + std::to_string(l) +
                                " exceeds basis size " + std::to_string(w.size()));
  }
  StateVector u = StateVector::Zero(target.size());
  for (std::size_t j = 0; j < l; ++j) {
    if (w[j].size() != target.size()) throw std::invalid_argument("basis/target dimension mismatch");
    u += w[j].dot(target) * w[j];
  }
  return u;
}

std::vector<double> reconstruction_errors(std::span<const StateVector> w,
                                          const StateVector& target) {
  std::vector<double> errors;
  errors.reserve(w.size() + 1);
  StateVector u = StateVector::Zero(target.size());
  errors.push_back((u - target).norm());
  for (const auto& wj : w) {
    if (wj.size() != target.size()) throw std::invalid_argument("basis/target dimension mismatch");
    u += wj.dot(target) * wj;
    errors.push_back((u - target).norm());
  }
  return errors;
}

std::mt19937_64 state_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

ReconstructionReport reconstruction_error_experiment(const Propagator& prop,
                                                     const ExperimentOptions& options) {
  if (options.n_states < 1 || options.n_times < 1) {
    throw std::invalid_argument("n_states and n_times must be >= 1");
  }
  if (!(options.t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");

  ReconstructionReport report;
  report.hamiltonian_name = options.name;
  report.n_states = options.n_states;
  report.n_times = options.n_times;
  report.seed = options.seed;
  report.d = count_distinct_eigenvalues(prop.spectral(), options.eig_tol);

  const auto grid = equidistant_grid(prop.dim(), options.dt);
  // errors[x][k][l]
  std::vector<std::vector<std::vector<double>>> errors(options.n_states);
  for (std::size_t x = 0; x < options.n_states; ++x) {
    auto rng = state_stream(options.seed, x);
    const StateVector psi0 = random_state(prop.dim(), rng);
    const BasisSet g = sampled_basis(prop, psi0, grid, options.rank_tol);
    report.grades.push_back(g.grade);
    report.any_truncated = report.any_truncated || g.truncated;
    const auto w = gram_schmidt(g.vectors, options.rank_tol);

    std::uniform_real_distribution<double> uniform(0.0, options.t_max);
    for (std::size_t k = 0; k < options.n_times; ++k) {
      const double tau = options.t_max - uniform(rng);  // (0, t_max]
      errors[x].push_back(reconstruction_errors(w, prop.evolve(psi0, tau)));
    }
  }
  report.m = *std::max_element(report.grades.begin(), report.grades.end());

  const double n_pairs = static_cast<double>(options.n_states * options.n_times);
  for (std::size_t l = 0; l <= report.m; ++l) {
    auto at = [l](const std::vector<double>& e) { return e[std::min(l, e.size() - 1)]; };
    double mean_over_states = 0.0;
    double pooled_sum = 0.0;
    for (const auto& per_state : errors) {
      double s = 0.0;
      for (const auto& e : per_state) s += at(e);
      pooled_sum += s;
      mean_over_states += s / static_cast<double>(per_state.size());
    }
    mean_over_states /= static_cast<double>(errors.size());
    const double pooled_mean = pooled_sum / n_pairs;
    double var = 0.0;
    for (const auto& per_state : errors) {
      for (const auto& e : per_state) var += (at(e) - pooled_mean) * (at(e) - pooled_mean);
    }
    report.r_curve.push_back({l, mean_over_states, std::sqrt(var / n_pairs)});
  }
  return report;
}

double effective_dimension(const Propagator& prop, const StateVector& psi0, double T,
                           std::size_t m, double lambda, ThetaGrid grid) {
  if (!(T > 0.0)) throw std::invalid_argument("effective dimension requires T > 0");
  if (m < 1) throw std::invalid_argument("effective dimension requires m >= 1");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  if (m == 1) return 1.0;

  const double step = T / static_cast<double>(m);
  const double offset = grid == ThetaGrid::shifted ? 1.0 : 0.0;
  auto sample = [&](std::size_t i) {
    return prop.evolve(psi0, (static_cast<double>(i) + offset) * step);
  };

  double m_eff = 1.0;
  StateVector prev = sample(1);
  for (std::size_t i = 1; i < m; ++i) {
    StateVector next = sample(i + 1);
    const double overlap = std::norm(prev.dot(next)) / (prev.squaredNorm() * next.squaredNorm());
    m_eff += overlap < lambda ? 1.0 : 1.0 - (overlap - lambda) / (1.0 - lambda);
    prev = std::move(next);
  }
  return m_eff;
}

EffectiveDimensionCurve effective_dimension_sweep(const Propagator& prop, const StateVector& psi0,
                                                  std::span<const double> T_grid,
                                                  const EffectiveDimensionOptions& options) {
  if (T_grid.empty()) throw std::invalid_argument("T grid must be nonempty");
  EffectiveDimensionCurve curve;
  curve.lambda = options.lambda;
  curve.m = sampled_basis(prop, psi0, options.dt, options.rank_tol).grade;
  curve.d = count_distinct_eigenvalues(prop.spectral(), options.eig_tol);
  for (double T : T_grid) {
    curve.T_values.push_back(T);
    curve.m_eff_values.push_back(
        effective_dimension(prop, psi0, T, curve.m, options.lambda, options.grid));
  }
  return curve;
}

double phase_invariance_angle(const Propagator& prop, const StateVector& psi0,
                              std::span<const double> time_grid, std::span<const double> phases,
                              double tol) {
  const BasisSet plain = sampled_basis(prop, psi0, time_grid, tol);
  const BasisSet phased = sampled_basis(prop, psi0, time_grid, tol, phases);
  return max_principal_angle(plain.vectors, phased.vectors);
}

double phase_invariance_check(const Propagator& prop, const StateVector& psi0,
                              std::span<const double> time_grid, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<double> phases(time_grid.size());
  for (auto& a : phases) a = uniform(rng);
  return phase_invariance_angle(prop, psi0, time_grid, phases, tol);
}

}  // namespace qkrylov
