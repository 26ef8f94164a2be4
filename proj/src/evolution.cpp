#include "qkrylov/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkrylov {

Propagator::Propagator(const HermitianOperator& h) : spectral_(eigendecompose_hermitian(h)) {}

Propagator::Propagator(SpectralDecomposition spectral) : spectral_(std::move(spectral)) {
  if (spectral_.eigenvectors.rows() != spectral_.dim() ||
      spectral_.eigenvectors.cols() != spectral_.dim()) {
    throw std::invalid_argument("spectral decomposition has inconsistent shapes");
  }
}

StateVector Propagator::evolve(const StateVector& psi0, double t) const {
  if (psi0.size() != dim()) {
    throw std::invalid_argument("state dimension " + std::to_string(psi0.size()) +
                                " does not match propagator dimension " + std::to_string(dim()));
  }
  if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
  const auto& v = spectral_.eigenvectors;
  StateVector coeffs = v.adjoint() * psi0;
  for (Index j = 0; j < coeffs.size(); ++j) {
    coeffs[j] *= std::polar(1.0, -spectral_.eigenvalues[j] * t);
  }
  return v * coeffs;
}

StateVector apply_global_phase(const StateVector& psi, double alpha) {
  return psi * std::polar(1.0, alpha);
}

StateVector random_state(Index dim, std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("random_state requires dim >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  StateVector psi(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    psi[i] = Complex(re, im);
  }
  return psi / psi.norm();
}

StateVector random_state(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_state(dim, rng);
}

StateVector basis_state(Index dim, Index index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  StateVector e = StateVector::Zero(dim);
  e[index] = 1.0;
  return e;
}

}  // namespace qkrylov
