#include "qkrylov/krylov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkrylov {

namespace {

constexpr double kUnitNormTol = 1e-10;
constexpr Complex kMinusI{0.0, -1.0};

void require_unit_norm(const StateVector& psi, const char* what) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > kUnitNormTol) {
    throw std::invalid_argument(std::string(what) + " must be unit norm, got norm " +
                                std::to_string(n));
  }
}

void require_dim(const StateVector& psi, Index dim) {
  if (psi.size() != dim) {
    throw std::invalid_argument("state dimension " + std::to_string(psi.size()) +
                                " does not match operator dimension " + std::to_string(dim));
  }
}

void require_nonzero(const StateVector& psi) {
  if (psi.size() == 0 || psi.norm() == 0.0) {
    throw std::invalid_argument("initial state must be nonzero");
  }
}

StateVector normalized_or_zero(const StateVector& v) {
  const double n = v.norm();
  return n > 0.0 ? StateVector(v / n) : v;
}

}  // namespace

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::power: return "power";
    case BasisKind::sampled: return "sampled";
    case BasisKind::partial_sum: return "partial_sum";
    case BasisKind::lanczos_orthonormal: return "lanczos_orthonormal";
    case BasisKind::eigen_cluster: return "eigen_cluster";
  }
  return "unknown";
}

BasisSet power_basis(const HermitianOperator& h, const StateVector& psi0, double tol,
                     PowerBasisMethod method) {
  require_dim(psi0, h.dim());
  require_nonzero(psi0);

  BasisSet out;
  out.kind = BasisKind::power;
  out.tolerance_used = tol;

  OrthonormalBuilder builder(h.dim(), tol);
  StateVector candidate = psi0 / psi0.norm();
  StateVector raw = psi0;
  int consecutive_dependent = 0;
  const Index max_candidates = 2 * h.dim() + 2;

  for (Index j = 0; j < max_candidates && consecutive_dependent < 2; ++j) {
    if (builder.try_add(candidate)) {
      consecutive_dependent = 0;
      out.labels.push_back(static_cast<double>(j));
      out.raw.push_back(raw);
      out.vectors.push_back(method == PowerBasisMethod::arnoldi ? builder.basis().back()
                                                                : candidate);
      candidate = method == PowerBasisMethod::arnoldi ? builder.basis().back() : candidate;
    } else {
      ++consecutive_dependent;
    }
    candidate = normalized_or_zero(kMinusI * h.apply(candidate));
    raw = kMinusI * h.apply(raw);
  }
  out.grade = out.vectors.size();
  return out;
}

std::vector<StateVector> krylov_powers(const HermitianOperator& h, const StateVector& psi0,
                                       std::size_t count) {
  require_dim(psi0, h.dim());
  std::vector<StateVector> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(psi0);
  while (out.size() < count) out.push_back(kMinusI * h.apply(out.back()));
  return out;
}

BasisSet sampled_basis(const Propagator& prop, const StateVector& psi0,
                       std::span<const double> time_grid, double tol,
                       std::span<const double> phases) {
  require_dim(psi0, prop.dim());
  require_unit_norm(psi0, "initial state");
  if (time_grid.empty()) throw std::invalid_argument("time grid must be nonempty");
  if (time_grid.front() != 0.0) throw std::invalid_argument("time grid must start at t = 0");
  for (std::size_t i = 1; i < time_grid.size(); ++i) {
    if (!(time_grid[i] > time_grid[i - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
  }
  if (!phases.empty() && phases.size() < time_grid.size()) {
    throw std::invalid_argument("phase list shorter than time grid");
  }

  BasisSet out;
  out.kind = BasisKind::sampled;
  out.tolerance_used = tol;

  OrthonormalBuilder builder(prop.dim(), tol);
  int consecutive_dependent = 0;
  for (std::size_t i = 0; i < time_grid.size() && consecutive_dependent < 2; ++i) {
    StateVector g = prop.evolve(psi0, time_grid[i]);
    if (!phases.empty()) g = apply_global_phase(g, phases[i]);
    if (builder.try_add(g)) {
      consecutive_dependent = 0;
      out.vectors.push_back(std::move(g));
      out.labels.push_back(time_grid[i]);
    } else {
      ++consecutive_dependent;
    }
  }
  out.grade = out.vectors.size();
  out.truncated = consecutive_dependent < 2 && out.grade < static_cast<std::size_t>(prop.dim());
  return out;
}

std::vector<double> equidistant_grid(Index dim, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be > 0");
  std::vector<double> grid(static_cast<std::size_t>(4 * dim));
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i) * dt;
  return grid;
}

BasisSet sampled_basis(const Propagator& prop, const StateVector& psi0, double dt, double tol) {
  const auto grid = equidistant_grid(prop.dim(), dt);
  return sampled_basis(prop, psi0, grid, tol);
}

ComplexMatrix vandermonde_matrix(std::span<const double> times) {
  const auto n = static_cast<Index>(times.size());
  for (Index i = 0; i < n; ++i) {
    for (Index k = i + 1; k < n; ++k) {
      if (times[static_cast<std::size_t>(i)] == times[static_cast<std::size_t>(k)]) {
        throw std::invalid_argument("Vandermonde times must be pairwise distinct");
      }
    }
  }
  ComplexMatrix theta(n, n);
  for (Index i = 0; i < n; ++i) {
    const double t = times[static_cast<std::size_t>(i)];
    double term = 1.0;  // t^j / j!
    for (Index j = 0; j < n; ++j) {
      if (j > 0) term *= t / static_cast<double>(j);
      theta(j, i) = term;
    }
  }
  return theta;
}

BasisSet partial_sum_basis(const HermitianOperator& h, const StateVector& psi0,
                           std::span<const double> times) {
  const ComplexMatrix theta = vandermonde_matrix(times);
  const auto powers = krylov_powers(h, psi0, times.size());

  BasisSet out;
  out.kind = BasisKind::partial_sum;
  out.normalized = false;
  if (times.empty()) return out;
  const ComplexMatrix hs = as_columns(powers) * theta;
  for (Index i = 0; i < hs.cols(); ++i) {
    out.vectors.push_back(hs.col(i));
    out.labels.push_back(times[static_cast<std::size_t>(i)]);
  }
  out.grade = numerical_rank(out.vectors, out.tolerance_used);
  return out;
}

Eigen::MatrixXd LanczosData::tridiagonal() const {
  const auto n = static_cast<Index>(a.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) t(i, i) = a[static_cast<std::size_t>(i)];
  for (Index i = 0; i + 1 < n; ++i) {
    t(i, i + 1) = t(i + 1, i) = b[static_cast<std::size_t>(i)];
  }
  return t;
}

LanczosData lanczos(const HermitianOperator& h, const StateVector& psi0, double tol) {
  require_dim(psi0, h.dim());
  require_nonzero(psi0);
  require_unit_norm(psi0, "Lanczos start vector");

  LanczosData ld;
  ld.basis.kind = BasisKind::lanczos_orthonormal;
  ld.basis.tolerance_used = tol;
  auto& k = ld.basis.vectors;
  k.push_back(psi0);
  ld.basis.labels.push_back(0.0);

  while (true) {
    const std::size_t n = k.size() - 1;
    const StateVector w = h.apply(k[n]);
    const double a = k[n].dot(w).real();
    ld.a.push_back(a);
    if (k.size() == static_cast<std::size_t>(h.dim())) break;

    StateVector r = w - a * k[n];
    if (n > 0) r -= ld.b[n - 1] * k[n - 1];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : k) r -= q.dot(r) * q;
    }
    const double beta = r.norm();
    if (beta <= tol * w.norm()) break;
    ld.b.push_back(beta);
    k.push_back(r / beta);
    ld.basis.labels.push_back(static_cast<double>(k.size() - 1));
  }
  ld.basis.grade = k.size();
  return ld;
}

std::vector<double> krylov_probabilities(const LanczosData& ld, const StateVector& psi) {
  std::vector<double> p;
  p.reserve(ld.basis.vectors.size());
  for (const auto& kn : ld.basis.vectors) {
    require_dim(psi, kn.size());
    p.push_back(std::norm(kn.dot(psi)));
  }
  return p;
}

double spread_complexity(const LanczosData& ld, const Propagator& prop, const StateVector& psi0,
                         double t) {
  const auto p = krylov_probabilities(ld, prop.evolve(psi0, t));
  double c = 0.0;
  for (std::size_t n = 1; n < p.size(); ++n) c += static_cast<double>(n) * p[n];
  return c;
}

BasisSet eigen_cluster_basis(const SpectralDecomposition& spec, const StateVector& psi0,
                             double eig_tol, double drop_tol) {
  require_dim(psi0, spec.dim());
  require_unit_norm(psi0, "initial state");

  BasisSet out;
  out.kind = BasisKind::eigen_cluster;
  out.normalized = false;
  out.tolerance_used = drop_tol;

  const auto clusters = cluster_eigenvalues(spec.eigenvalues, eig_tol);
  for (std::size_t p = 0; p < clusters.size(); ++p) {
    const Index first = clusters[p].front();
    const auto len = static_cast<Index>(clusters[p].size());
    const auto block = spec.eigenvectors.middleCols(first, len);
    StateVector xi = block * (block.adjoint() * psi0);
    if (xi.norm() <= drop_tol) continue;
    out.vectors.push_back(std::move(xi));
    out.labels.push_back(static_cast<double>(p));
  }
  out.grade = numerical_rank(out.vectors, drop_tol);
  return out;
}

}  // namespace qkrylov
