#pragma once

#include <cstdint>
#include <random>

#include "qkrylov/numerics.hpp"

namespace qkrylov {

/// Exact propagator exp(-iHt) built from one spectral decomposition of H and
/// reused for every time query. Immutable; safe to share across threads.
class Propagator {
 public:
  explicit Propagator(const HermitianOperator& h);
  explicit Propagator(SpectralDecomposition spectral);

  /// sum_j exp(-i eps_j t) |phi_j><phi_j|psi0>. Any finite t, including t < 0.
  StateVector evolve(const StateVector& psi0, double t) const;

  const SpectralDecomposition& spectral() const noexcept { return spectral_; }
  Index dim() const noexcept { return spectral_.dim(); }

 private:
  SpectralDecomposition spectral_;
};

/// psi * exp(i alpha).
StateVector apply_global_phase(const StateVector& psi, double alpha);

/// Haar-random unit vector: normalized vector of 2*dim independent standard
/// normals (real and imaginary parts). Throws std::invalid_argument for dim 0.
StateVector random_state(Index dim, std::mt19937_64& rng);
StateVector random_state(Index dim, std::uint64_t seed);

/// Computational basis state |index>.
StateVector basis_state(Index dim, Index index);

}  // namespace qkrylov
