#include "qkrylov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qkrylov {

namespace {

constexpr double kHermitianRelTol = 1e-12;

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "matrix must be square, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(msg.str());
  }
}

void require_hermitian(const ComplexMatrix& m) {
  require_square(m);
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianRelTol * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |M_ij - conj(M_ji)| = " << defect
        << " exceeds " << kHermitianRelTol << " * max|M| = " << kHermitianRelTol * scale;
    throw std::invalid_argument(msg.str());
  }
}

void require_same_dim(std::span<const StateVector> vectors, Index dim) {
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      std::ostringstream msg;
      msg << "vector dimension mismatch: expected " << dim << ", got " << v.size();
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_hermitian(m_);
}

StateVector HermitianOperator::apply(const StateVector& v) const {
  if (v.size() != dim()) {
    throw std::invalid_argument("operator/state dimension mismatch");
  }
  return m_ * v;
}

SpectralDecomposition eigendecompose_hermitian(const HermitianOperator& h) {
  // Symmetrize so the solver sees an exactly Hermitian matrix; it only reads
  // the lower triangle otherwise.
  const ComplexMatrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigendecomposition did not converge");
  }
  // Eigen returns eigenvalues in ascending order.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectralDecomposition eigendecompose_hermitian(const ComplexMatrix& m) {
  return eigendecompose_hermitian(HermitianOperator(m));
}

OrthonormalBuilder::OrthonormalBuilder(Index dim, double tol) : dim_(dim), tol_(tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("orthonormalization tolerance must be > 0");
}

bool OrthonormalBuilder::try_add(const StateVector& v) {
  if (v.size() != dim_) {
    std::ostringstream msg;
    msg << "vector dimension mismatch: expected " << dim_ << ", got " << v.size();
    throw std::invalid_argument(msg.str());
  }
  const double norm = v.norm();
  if (norm == 0.0 || !std::isfinite(norm)) {
    last_residual_ = 0.0;
    return false;
  }
  StateVector r = v / norm;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis_) r -= q.dot(r) * q;  // dot conjugates the left operand
  }
  last_residual_ = r.norm();
  if (last_residual_ <= tol_) return false;
  basis_.push_back(r / last_residual_);
  return true;
}

std::vector<StateVector> gram_schmidt(std::span<const StateVector> vectors, double tol) {
  if (vectors.empty()) return {};
  OrthonormalBuilder builder(vectors.front().size(), tol);
  for (const auto& v : vectors) builder.try_add(v);
  return builder.basis();
}

std::size_t numerical_rank(std::span<const StateVector> vectors, double tol) {
  return gram_schmidt(vectors, tol).size();
}

std::vector<std::vector<Index>> cluster_eigenvalues(const RealVector& sorted_eigenvalues,
                                                    double eig_tol) {
  if (!(eig_tol > 0.0)) throw std::invalid_argument("eigenvalue tolerance must be > 0");
  std::vector<std::vector<Index>> clusters;
  const Index n = sorted_eigenvalues.size();
  if (n == 0) return clusters;
  const double range = sorted_eigenvalues[n - 1] - sorted_eigenvalues[0];
  const double gap_tol = eig_tol * std::max(1.0, range);
  clusters.push_back({0});
  for (Index i = 1; i < n; ++i) {
    const double gap = sorted_eigenvalues[i] - sorted_eigenvalues[i - 1];
    if (gap < 0.0) throw std::invalid_argument("eigenvalues must be sorted ascending");
    if (gap > gap_tol) clusters.emplace_back();
    clusters.back().push_back(i);
  }
  return clusters;
}

ComplexMatrix as_columns(std::span<const StateVector> vectors) {
  if (vectors.empty()) return {};
  ComplexMatrix out(vectors.front().size(), static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) out.col(static_cast<Index>(j)) = vectors[j];
  return out;
}

std::vector<double> principal_angles(std::span<const StateVector> a,
                                     std::span<const StateVector> b) {
  if (a.empty() || b.empty()) return {};
  const Index dim = a.front().size();
  require_same_dim(a, dim);
  require_same_dim(b, dim);

  const auto qa_vec = gram_schmidt(a);
  const auto qb_vec = gram_schmidt(b);
  if (qa_vec.empty() || qb_vec.empty()) return {};
  ComplexMatrix qa = as_columns(qa_vec);
  ComplexMatrix qb = as_columns(qb_vec);
  // Keep qa the larger (or equal) set.
  if (qa.cols() < qb.cols()) std::swap(qa, qb);
  const Index k = qb.cols();

  const ComplexMatrix cross = qa.adjoint() * qb;
  const RealVector cosines = Eigen::JacobiSVD<ComplexMatrix>(cross).singularValues();  // descending

  // Cosines lose resolution near zero angle (acos(1 - eps) ~ sqrt(2 eps)),
  // so small angles come from the sines of the projection residual.
  const ComplexMatrix residual = qb - qa * cross;
  RealVector sines = Eigen::JacobiSVD<ComplexMatrix>(residual).singularValues();
  std::sort(sines.data(), sines.data() + sines.size());  // ascending, pairs with descending cosines

  std::vector<double> angles(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const double c = std::clamp(cosines[i], 0.0, 1.0);
    const double s = std::clamp(sines[i], 0.0, 1.0);
    angles[static_cast<std::size_t>(i)] = c * c >= 0.5 ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double max_principal_angle(std::span<const StateVector> a, std::span<const StateVector> b) {
  if (numerical_rank(a) != numerical_rank(b)) return std::numbers::pi / 2;
  const auto angles = principal_angles(a, b);
  return angles.empty() ? 0.0 : angles.back();
}

bool spans_equal(std::span<const StateVector> a, std::span<const StateVector> b, double tol) {
  return max_principal_angle(a, b) <= tol;
}

}  // namespace qkrylov
