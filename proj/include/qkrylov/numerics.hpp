#pragma once

// Dense complex linear algebra used throughout qkrylov: Hermitian operators,
// spectral decomposition, Gram-Schmidt orthonormalization, numerical rank
// and principal angles between subspaces.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qkrylov {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using StateVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Relative residual below which a vector counts as linearly dependent.
inline constexpr double kDefaultRankTol = 1e-10;
/// Relative gap below which two eigenvalues are counted as equal.
inline constexpr double kDefaultEigTol = 1e-8;
/// Two spans are considered equal when the largest principal angle is below this.
inline constexpr double kSpanEqualityTol = 1e-8;

/// Largest entrywise deviation |M_ij - conj(M_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

/// A square matrix with M = M^dagger, checked on construction.
///
/// The check is relative: max |M_ij - conj(M_ji)| <= 1e-12 * max |M_ij|.
/// Throws std::invalid_argument naming the violated invariant otherwise.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  StateVector apply(const StateVector& v) const;

 private:
  ComplexMatrix m_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, column j belongs to eigenvalues[j]

  Index dim() const noexcept { return eigenvalues.size(); }
};

SpectralDecomposition eigendecompose_hermitian(const HermitianOperator& h);

/// Validating overload for raw matrices; throws std::invalid_argument for
/// non-square or non-Hermitian input.
SpectralDecomposition eigendecompose_hermitian(const ComplexMatrix& m);

/// Incremental orthonormalizer: modified Gram-Schmidt with one full
/// re-orthogonalization pass. A candidate is rejected when its residual after
/// projection is at most `tol` times its own norm.
class OrthonormalBuilder {
 public:
  explicit OrthonormalBuilder(Index dim, double tol = kDefaultRankTol);

  /// Returns true and appends the normalized residual if `v` is independent.
  bool try_add(const StateVector& v);

  /// Relative residual ||P_perp v|| / ||v|| of the last call to try_add
  /// (0 for a zero vector).
  double last_relative_residual() const noexcept { return last_residual_; }

  const std::vector<StateVector>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }
  Index dim() const noexcept { return dim_; }
  double tol() const noexcept { return tol_; }

 private:
  Index dim_;
  double tol_;
  double last_residual_ = 0.0;
  std::vector<StateVector> basis_;
};

/// Orthonormal list spanning the same subspace as `vectors`; dependent and
/// zero vectors are dropped, survivors keep input order.
std::vector<StateVector> gram_schmidt(std::span<const StateVector> vectors,
                                      double tol = kDefaultRankTol);

std::size_t numerical_rank(std::span<const StateVector> vectors,
                           double tol = kDefaultRankTol);

/// Principal angles (radians, ascending) between span(a) and span(b).
/// Each list is orthonormalized first; the number of angles returned is
/// min(rank a, rank b).
std::vector<double> principal_angles(std::span<const StateVector> a,
                                     std::span<const StateVector> b);

/// Largest principal angle, or pi/2 when the spans differ in dimension.
double max_principal_angle(std::span<const StateVector> a, std::span<const StateVector> b);

bool spans_equal(std::span<const StateVector> a, std::span<const StateVector> b,
                 double tol = kSpanEqualityTol);

/// Groups sorted eigenvalues into clusters of numerically equal values. A new
/// cluster opens when the gap to the previous eigenvalue exceeds
/// eig_tol * max(1, spectral range). Returns index lists in ascending order.
std::vector<std::vector<Index>> cluster_eigenvalues(const RealVector& sorted_eigenvalues,
                                                    double eig_tol);

/// Columns of `vectors` packed into a matrix.
ComplexMatrix as_columns(std::span<const StateVector> vectors);

}  // namespace qkrylov
