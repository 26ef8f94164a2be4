#pragma once

// Krylov-space constructions for a Hermitian generator H and a start state
// psi0: the power basis f^j = (-iH)^j psi0, the sampled basis of time-evolved
// states, the partial-sum basis with its Vandermonde transform, the Lanczos
// basis with spread complexity, and the eigen-cluster basis.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qkrylov/evolution.hpp"
#include "qkrylov/numerics.hpp"

namespace qkrylov {

/// Equidistant sampling step used when no grid is given.
inline constexpr double kDefaultSamplingStep = 1.0;

enum class BasisKind { power, sampled, partial_sum, lanczos_orthonormal, eigen_cluster };

std::string_view to_string(BasisKind kind);

struct BasisSet {
  BasisKind kind = BasisKind::sampled;
  std::vector<StateVector> vectors;
  // Per-vector metadata: power j, sample time t_i, or cluster index p.
  std::vector<double> labels;
  // Power basis only: the unnormalized f^j = (-iH)^j psi0 for j = 0..grade-1.
  std::vector<StateVector> raw;
  std::size_t grade = 0;
  double tolerance_used = kDefaultRankTol;
  bool normalized = true;  // every entry of `vectors` has unit norm
  bool truncated = false;  // sampled basis: grid ran out before the plateau was confirmed
};

enum class PowerBasisMethod {
  // Next power direction is (-iH) applied to the newest orthonormal Krylov
  // vector. Same spans as direct powers; well conditioned.
  arnoldi,
  // Renormalized direct powers (-iH)^j psi0 / ||.||. Loses independence
  // numerically once the Krylov vectors become nearly parallel.
  direct,
};

/// Krylov basis of (-iH, psi0), grown until two consecutive candidates are
/// dependent at relative tolerance `tol`. Throws for psi0 = 0.
BasisSet power_basis(const HermitianOperator& h, const StateVector& psi0,
                     double tol = kDefaultRankTol,
                     PowerBasisMethod method = PowerBasisMethod::arnoldi);

/// Raw, unnormalized f^j = (-iH)^j psi0 for j = 0..count-1.
std::vector<StateVector> krylov_powers(const HermitianOperator& h, const StateVector& psi0,
                                       std::size_t count);

/// Sampled basis: g_i = exp(-iH t_i) psi0 in grid order, orthonormalized
/// incrementally; stops after two consecutive dependent samples. The grid
/// must be strictly increasing with t_0 = 0 and psi0 must be unit norm.
///
/// `phases`, if non-empty, multiplies sample i by exp(i phases[i]) before the
/// dependence test; it must be at least as long as the grid.
BasisSet sampled_basis(const Propagator& prop, const StateVector& psi0,
                       std::span<const double> time_grid, double tol = kDefaultRankTol,
                       std::span<const double> phases = {});

/// t_i = i * dt for i = 0 .. 4*dim - 1.
std::vector<double> equidistant_grid(Index dim, double dt = kDefaultSamplingStep);

/// Sampled basis on equidistant_grid(prop.dim(), dt).
BasisSet sampled_basis(const Propagator& prop, const StateVector& psi0,
                       double dt = kDefaultSamplingStep, double tol = kDefaultRankTol);

/// Theta[j][i] = t_i^j / j! for j, i = 0..n-1. Throws on repeated times.
ComplexMatrix vandermonde_matrix(std::span<const double> times);

/// h_i = sum_{j<n} f^j t_i^j / j! with n = times.size(); vectors are returned
/// in time order and are not normalized.
BasisSet partial_sum_basis(const HermitianOperator& h, const StateVector& psi0,
                           std::span<const double> times);

struct LanczosData {
  std::vector<double> a;  // diagonal
  std::vector<double> b;  // off-diagonal, size a.size() - 1, all > 0
  BasisSet basis;         // kind lanczos_orthonormal

  /// The tridiagonal matrix with diagonal a and off-diagonal b.
  Eigen::MatrixXd tridiagonal() const;
};

/// Three-term Lanczos recursion with full re-orthogonalization against every
/// previous vector. Stops when b_n <= tol * ||H k_n||, so the vector count
/// matches the power-basis grade at the same tolerance.
LanczosData lanczos(const HermitianOperator& h, const StateVector& psi0,
                    double tol = kDefaultRankTol);

/// |<k_n|psi>|^2 for each Lanczos vector k_n.
std::vector<double> krylov_probabilities(const LanczosData& ld, const StateVector& psi);

/// C_S(t) = sum_n n |<k_n|psi(t)>|^2 with zero-based n, so C_S(0) = 0.
double spread_complexity(const LanczosData& ld, const Propagator& prop, const StateVector& psi0,
                         double t);

/// xi_p = P_p psi0 for every eigenvalue cluster p (see cluster_eigenvalues);
/// clusters with ||xi_p|| <= drop_tol are omitted. Vectors are not normalized.
BasisSet eigen_cluster_basis(const SpectralDecomposition& spec, const StateVector& psi0,
                             double eig_tol = kDefaultEigTol,
                             double drop_tol = kDefaultRankTol);

}  // namespace qkrylov
