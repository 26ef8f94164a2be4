#include "doctest.h"

#include <numbers>
#include <random>

#include "qkrylov/analysis.hpp"
#include "qkrylov/hamiltonian.hpp"

using namespace qkrylov;

namespace {

constexpr double kPi = std::numbers::pi;

Propagator builtin_propagator(const char* name) {
  return Propagator(build_hamiltonian(builtin_hamiltonian(name)));
}

}  // namespace

TEST_CASE("count_distinct_eigenvalues") {
  const Propagator id(HermitianOperator(ComplexMatrix(ComplexMatrix::Identity(5, 5))));
  CHECK(count_distinct_eigenvalues(id.spectral()) == 1);
  CHECK(count_distinct_eigenvalues(builtin_propagator("H_2").spectral()) == 3);
  CHECK(count_distinct_eigenvalues(builtin_propagator("H_I2").spectral()) == 16);

  SUBCASE("rigid shift leaves the count unchanged") {
    for (const auto& name : builtin_hamiltonian_names()) {
      const auto h = build_hamiltonian(builtin_hamiltonian(name));
      const auto base = count_distinct_eigenvalues(eigendecompose_hermitian(h));
      for (double shift : {-3.0, 0.25, 10.0}) {
        const ComplexMatrix shifted = h.matrix() + shift * ComplexMatrix::Identity(16, 16);
        CHECK(count_distinct_eigenvalues(eigendecompose_hermitian(shifted)) == base);
      }
    }
  }
}

TEST_CASE("reconstruct") {
  const auto prop = builtin_propagator("H_I1");
  const auto psi0 = random_state(16, std::uint64_t{2});
  const auto g = sampled_basis(prop, psi0);
  const auto w = gram_schmidt(g.vectors);
  REQUIRE(w.size() == 9);

  CHECK(reconstruct(w, psi0, 0).norm() == 0.0);
  for (double tau : {0.37, 4.2, 9.9}) {
    const auto target = prop.evolve(psi0, tau);
    CHECK((reconstruct(w, target, w.size()) - target).norm() <= 1e-8);
    const auto errors = reconstruction_errors(w, target);
    REQUIRE(errors.size() == w.size() + 1);
    CHECK(errors.front() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t l = 0; l <= w.size(); ++l) {
      CHECK(errors[l] == doctest::Approx((reconstruct(w, target, l) - target).norm()));
    }
  }

  // A state orthogonal to span(w) projects to zero.
  StateVector outside = random_state(16, std::uint64_t{3});
  for (const auto& wj : w) outside -= wj.dot(outside) * wj;
  CHECK(reconstruct(w, outside, w.size()).norm() <= 1e-12);

  CHECK_THROWS_AS(reconstruct(w, psi0, w.size() + 1), std::invalid_argument);
}

TEST_CASE("reconstruction_error_experiment") {
  SUBCASE("H_1 and H_I3 reconstruct exactly at l = m") {
    for (const auto& [name, m] : {std::pair{"H_1", 2}, std::pair{"H_I3", 15}}) {
      ExperimentOptions options;
      options.name = name;
      const auto report = reconstruction_error_experiment(builtin_propagator(name), options);
      CHECK(report.m == static_cast<std::size_t>(m));
      CHECK(report.d == report.m);
      REQUIRE(report.r_curve.size() == report.m + 1);
      CHECK(report.r_curve.front().r_mean == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(report.r_curve.back().r_mean <= 1e-8);
      for (std::size_t l = 1; l < report.r_curve.size(); ++l) {
        CHECK(report.r_curve[l].r_mean <= report.r_curve[l - 1].r_mean + 1e-12);
        CHECK(report.r_curve[l].r_std >= 0.0);
      }
    }
  }
  SUBCASE("same seed gives the same report") {
    ExperimentOptions options;
    options.n_states = 3;
    options.n_times = 4;
    const auto prop = builtin_propagator("H_3");
    const auto a = reconstruction_error_experiment(prop, options);
    const auto b = reconstruction_error_experiment(prop, options);
    REQUIRE(a.r_curve.size() == b.r_curve.size());
    for (std::size_t l = 0; l < a.r_curve.size(); ++l) {
      CHECK(a.r_curve[l].r_mean == b.r_curve[l].r_mean);
      CHECK(a.r_curve[l].r_std == b.r_curve[l].r_std);
    }
  }
  SUBCASE("invalid counts") {
    ExperimentOptions options;
    options.n_states = 0;
    CHECK_THROWS_AS(reconstruction_error_experiment(builtin_propagator("H_1"), options),
                    std::invalid_argument);
  }
}

TEST_CASE("effective_dimension") {
  const auto prop = builtin_propagator("H_1");
  const auto e0 = basis_state(16, 0);

  SUBCASE("unit overlaps give 1") {
    const StateVector v = prop.spectral().eigenvectors.col(0);
    CHECK(effective_dimension(prop, v, 3.0, 4) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("overlaps below the threshold give m") {
    // Under H_1, |<0000|exp(-iH_1 s)|0000>|^2 = cos^2(s/2); spacing pi gives zero overlap.
    CHECK(effective_dimension(prop, e0, 2 * kPi, 2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(effective_dimension(prop, e0, 5 * kPi, 5) == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("interpolated branch") {
    const double spacing = 0.5;  // cos^2(0.25) ~ 0.939 > 1/sqrt(2)
    const double overlap = std::pow(std::cos(spacing / 2), 2);
    const double expected = 2.0 - (overlap - kDefaultLambda) / (1.0 - kDefaultLambda);
    CHECK(effective_dimension(prop, e0, 2 * spacing, 2) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("H_1 collapses at T = 4pi for any start state") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CHECK(std::abs(effective_dimension(prop, random_state(16, seed), 4 * kPi, 2) - 1.0) <= 1e-10);
    }
  }
  SUBCASE("shifted theta grid samples (i+1)T/m") {
    // m = 2: samples at T and 3T/2; with T = 2pi the spacing is pi.
    CHECK(effective_dimension(prop, e0, 2 * kPi, 2, kDefaultLambda, ThetaGrid::shifted) ==
          doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("m = 1 and invalid arguments") {
    CHECK(effective_dimension(prop, e0, 1.0, 1) == 1.0);
    CHECK_THROWS_AS(effective_dimension(prop, e0, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(effective_dimension(prop, e0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(effective_dimension(prop, e0, 1.0, 2, 1.0), std::invalid_argument);
  }
  SUBCASE("global phase on psi0 does not change m_eff") {
    const auto prop2 = builtin_propagator("H_I3");
    const auto psi = random_state(16, std::uint64_t{8});
    for (double T : {1.0, 7.5, 20.0}) {
      CHECK(effective_dimension(prop2, apply_global_phase(psi, 2.1), T, 15) ==
            doctest::Approx(effective_dimension(prop2, psi, T, 15)).epsilon(1e-12));
    }
  }
}

TEST_CASE("effective_dimension_sweep") {
  std::vector<double> grid;
  for (int k = 1; k <= 200; ++k) grid.push_back(k * 8 * kPi / 200);

  SUBCASE("H_1 dips to 1 at 4pi and reaches 2 elsewhere") {
    const auto prop = builtin_propagator("H_1");
    const auto curve = effective_dimension_sweep(prop, random_state(16, std::uint64_t{1}), grid);
    CHECK(curve.m == 2);
    CHECK(curve.d == 2);
    CHECK(curve.m_eff_values[99] == doctest::Approx(1.0).epsilon(1e-10));  // T = 4pi
    CHECK(*std::max_element(curve.m_eff_values.begin(), curve.m_eff_values.end()) ==
          doctest::Approx(2.0));
  }
  SUBCASE("H_2 drops at 6pi") {
    const auto prop = builtin_propagator("H_2");
    const auto psi = random_state(16, std::uint64_t{2});
    const std::vector<double> two{5 * kPi, 6 * kPi};
    const auto curve = effective_dimension_sweep(prop, psi, two);
    CHECK(curve.m == 3);
    CHECK(curve.m_eff_values[1] < curve.m_eff_values[0]);
  }
  SUBCASE("values lie in [1, m]") {
    for (const auto& name : builtin_hamiltonian_names()) {
      const Propagator prop(build_hamiltonian(builtin_hamiltonian(name)));
      const auto curve = effective_dimension_sweep(prop, random_state(16, std::uint64_t{3}), grid);
      for (double v : curve.m_eff_values) {
        CHECK(v >= 1.0 - 1e-12);
        CHECK(v <= static_cast<double>(curve.m) + 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(effective_dimension_sweep(builtin_propagator("H_1"),
                                            random_state(16, std::uint64_t{1}),
                                            std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("phase invariance of the sampled span") {
  const auto prop = builtin_propagator("H_4");
  const auto psi0 = random_state(16, std::uint64_t{5});
  const auto grid = equidistant_grid(16);

  const std::vector<double> zeros(grid.size(), 0.0);
  CHECK(phase_invariance_angle(prop, psi0, grid, zeros) <= 1e-14);  // identical bases up to SVD roundoff
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(phase_invariance_check(prop, psi0, grid, seed) <= 1e-10);
  }

  const StateVector v = prop.spectral().eigenvectors.col(0);
  const std::vector<double> flips(grid.size(), kPi);
  CHECK(phase_invariance_angle(prop, v, grid, flips) <= 1e-15);
}
