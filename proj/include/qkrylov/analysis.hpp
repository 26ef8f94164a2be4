#pragma once

// Verification machinery: reconstruction errors, distinct-eigenvalue
// counting, effective dimension and the global-phase invariance check.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qkrylov/evolution.hpp"
#include "qkrylov/krylov.hpp"
#include "qkrylov/numerics.hpp"

namespace qkrylov {

inline const double kDefaultLambda = 1.0 / std::sqrt(2.0);

std::size_t count_distinct_eigenvalues(const SpectralDecomposition& spec,
                                       double eig_tol = kDefaultEigTol);

/// u_l = sum_{j<l} <w_j|target> w_j for an orthonormal list w.
/// Throws std::invalid_argument if l > w.size().
StateVector reconstruct(std::span<const StateVector> w, const StateVector& target, std::size_t l);

/// ||u_l - target|| for l = 0..w.size().
std::vector<double> reconstruction_errors(std::span<const StateVector> w,
                                          const StateVector& target);

struct ReconstructionPoint {
  std::size_t l = 0;
  double r_mean = 0.0;
  double r_std = 0.0;
};

struct ReconstructionReport {
  std::string hamiltonian_name;
  std::size_t m = 0;  // largest sampled-basis grade over the initial states
  std::size_t d = 0;
  std::vector<ReconstructionPoint> r_curve;  // l = 0..m
  std::vector<std::size_t> grades;           // per initial state
  std::size_t n_states = 0;
  std::size_t n_times = 0;
  std::uint64_t seed = 0;
  bool any_truncated = false;
};

struct ExperimentOptions {
  std::string name;
  std::size_t n_states = 10;
  std::size_t n_times = 25;
  double t_max = 10.0;
  double dt = kDefaultSamplingStep;
  double rank_tol = kDefaultRankTol;
  double eig_tol = kDefaultEigTol;
  std::uint64_t seed = 42;
};

/// RNG stream for initial state x of an experiment, independent of the
/// order in which states are processed.
std::mt19937_64 state_stream(std::uint64_t seed, std::uint64_t index);

/// For each of n_states Haar-random initial states: build the sampled basis,
/// orthonormalize it, draw n_times uniform times in (0, t_max] and record
/// r(tau, l) = ||u_l(tau) - psi(tau)||. r_mean(l) averages over times, then
/// over states; r_std is the spread over all (state, time) pairs. States whose
/// grade is below m contribute their final error for l beyond their grade.
ReconstructionReport reconstruction_error_experiment(const Propagator& prop,
                                                     const ExperimentOptions& options);

enum class ThetaGrid {
  endpoint,  // theta_i = i T / m, i = 1..m; the last sample sits at T
  shifted,   // theta_i = (i + 1) T / m, i = 1..m
};

/// m_eff = 1 + sum_i m_eff_i over consecutive overlaps
/// lambda_i = |<g_i|g_{i+1}>|^2 of m states sampled on the theta grid, where
/// m_eff_i = 1 below the threshold and 1 - (lambda_i - lambda) / (1 - lambda)
/// otherwise.
double effective_dimension(const Propagator& prop, const StateVector& psi0, double T,
                           std::size_t m, double lambda = kDefaultLambda,
                           ThetaGrid grid = ThetaGrid::endpoint);

struct EffectiveDimensionCurve {
  std::vector<double> T_values;
  std::vector<double> m_eff_values;
  double lambda = kDefaultLambda;
  std::size_t m = 0;
  std::size_t d = 0;
};

struct EffectiveDimensionOptions {
  double lambda = kDefaultLambda;
  ThetaGrid grid = ThetaGrid::endpoint;
  double dt = kDefaultSamplingStep;
  double rank_tol = kDefaultRankTol;
  double eig_tol = kDefaultEigTol;
};

/// Effective dimension over a grid of T values. m is the sampled-basis grade
/// of psi0 and d the distinct-eigenvalue count of the propagator's generator.
EffectiveDimensionCurve effective_dimension_sweep(const Propagator& prop, const StateVector& psi0,
                                                  std::span<const double> T_grid,
                                                  const EffectiveDimensionOptions& options = {});

/// Largest principal angle between the sampled basis and the same basis built
/// with sample i multiplied by exp(i phases[i]).
double phase_invariance_angle(const Propagator& prop, const StateVector& psi0,
                              std::span<const double> time_grid, std::span<const double> phases,
                              double tol = kDefaultRankTol);

/// phase_invariance_angle with phases drawn uniformly from [0, 2pi).
double phase_invariance_check(const Propagator& prop, const StateVector& psi0,
                              std::span<const double> time_grid, std::uint64_t seed,
                              double tol = kDefaultRankTol);

}  // namespace qkrylov
