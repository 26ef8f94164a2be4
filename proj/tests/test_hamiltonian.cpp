#include "doctest.h"

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qkrylov/hamiltonian.hpp"

using namespace qkrylov;

TEST_CASE("single_site_pauli matches explicit Kronecker products") {
  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  CHECK((single_site_pauli(Pauli::X, 1, 1).matrix() - sx).cwiseAbs().maxCoeff() == 0.0);

  const auto z2 = single_site_pauli(Pauli::Z, 2, 2).matrix();
  Eigen::VectorXcd expected(4);
  expected << 1, -1, 1, -1;
  CHECK((z2 - ComplexMatrix(expected.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

  const auto x14 = single_site_pauli(Pauli::X, 1, 4).matrix();
  const auto ev = oracle::jacobi_eigenvalues(x14);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(ev[i] - (i < 8 ? -1.0 : 1.0)) < 1e-12);

  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t site = 1; site <= n; ++site) {
      for (char p : {'X', 'Y', 'Z'}) {
        std::string letters(n, 'I');
        letters[site - 1] = p;
        const auto op = single_site_pauli(static_cast<Pauli>(p), site, n).matrix();
        CHECK((op - oracle::pauli_string(letters)).cwiseAbs().maxCoeff() < 1e-15);
      }
    }
  }
}

TEST_CASE("single_site_pauli rejects bad sites") {
  CHECK_THROWS_AS(single_site_pauli(Pauli::X, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(single_site_pauli(Pauli::X, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(single_site_pauli(Pauli::X, 1, kMaxQubits + 1), std::invalid_argument);
}

TEST_CASE("Pauli algebra: involution and commutation across sites") {
  const std::size_t n = 3;
  for (std::size_t i = 1; i <= n; ++i) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const auto a = single_site_pauli(p, i, n).matrix();
      CHECK((a * a - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-12);
      for (std::size_t j = 1; j <= n; ++j) {
        if (j == i) continue;
        for (Pauli q : {Pauli::X, Pauli::Y, Pauli::Z}) {
          const auto b = single_site_pauli(q, j, n).matrix();
          CHECK((a * b - b * a).cwiseAbs().maxCoeff() <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("build_hamiltonian") {
  SUBCASE("single term") {
    const HamiltonianSpec spec{1, {{0.5, PauliString::parse("X")}}};
    ComplexMatrix expected(2, 2);
    expected << 0, 0.5, 0.5, 0;
    CHECK((build_hamiltonian(spec).matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("H_1 has eigenvalues +-0.5, each x8") {
    const HamiltonianSpec spec{4, {{0.5, PauliString::parse("XIII")}}};
    const auto ev = oracle::jacobi_eigenvalues(build_hamiltonian(spec).matrix());
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(ev[i] - (i < 8 ? -0.5 : 0.5)) < 1e-12);
    CHECK(oracle::count_distinct(ev) == 2);
  }
  SUBCASE("linearity in the coefficients") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const char* strings[] = {"XYZI", "ZZII", "IYIY", "XIIX"};
    for (int trial = 0; trial < 10; ++trial) {
      HamiltonianSpec a{4, {}}, b{4, {}}, sum{4, {}};
      for (const char* s : strings) {
        const double ca = u(rng), cb = u(rng);
        a.terms.push_back({ca, PauliString::parse(s)});
        b.terms.push_back({cb, PauliString::parse(s)});
        sum.terms.push_back({ca + cb, PauliString::parse(s)});
      }
      const ComplexMatrix lhs = build_hamiltonian(sum).matrix();
      const ComplexMatrix rhs = build_hamiltonian(a).matrix() + build_hamiltonian(b).matrix();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  SUBCASE("matches Kronecker oracle for mixed strings") {
    const HamiltonianSpec spec{3, {{0.7, PauliString::parse("XYZ")}, {-1.3, PauliString::parse("YIY")}}};
    const ComplexMatrix expected =
        0.7 * oracle::pauli_string("XYZ") - 1.3 * oracle::pauli_string("YIY");
    CHECK((build_hamiltonian(spec).matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("string length mismatch is rejected") {
    const HamiltonianSpec bad{4, {{0.5, PauliString::parse("XII")}}};
    CHECK_THROWS_AS(build_hamiltonian(bad), std::invalid_argument);
  }
}

TEST_CASE("builtin Hamiltonians") {
  const auto h4 = builtin_hamiltonian("H4");
  REQUIRE(h4.terms.size() == 4);
  const char* h4_strings[] = {"XIII", "IXII", "IIXI", "IIIX"};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(h4.terms[i].coefficient == 0.5);
    CHECK(h4.terms[i].string.to_string() == h4_strings[i]);
  }

  const auto hi2 = builtin_hamiltonian("HI2");
  const std::pair<const char*, double> hi2_terms[] = {
      {"XXII", 0.4}, {"XIXI", 0.5}, {"XIIX", 0.5}, {"IXXI", 0.5}, {"IXIX", 0.5}, {"IIXX", 0.5},
      {"ZIII", 0.5}, {"IZII", 0.5}, {"IIZI", 0.5}, {"IIIZ", 0.5}};
  REQUIRE(hi2.terms.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(hi2.terms[i].string.to_string() == hi2_terms[i].first);
    CHECK(hi2.terms[i].coefficient == hi2_terms[i].second);
  }

  const auto hi3 = builtin_hamiltonian("H_I3");
  const double couplings[] = {0.35, 0.4, 0.45, 0.6, 0.55, 0.5};
  const char* pairs[] = {"XXII", "XIXI", "XIIX", "IXXI", "IXIX", "IIXX"};
  REQUIRE(hi3.terms.size() == 10);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(hi3.terms[i].string.to_string() == pairs[i]);
    CHECK(hi3.terms[i].coefficient == couplings[i]);
  }

  CHECK_THROWS_WITH_AS(builtin_hamiltonian("H_9"), doctest::Contains("H_I3"),
                       std::invalid_argument);
  CHECK(canonical_hamiltonian_name("hi1") == "H_I1");
  CHECK(canonical_hamiltonian_name("nope").empty());
}

TEST_CASE("builtin Hamiltonians have the tabulated distinct-eigenvalue counts") {
  const std::pair<const char*, std::size_t> expected[] = {
      {"H_1", 2}, {"H_2", 3}, {"H_3", 4}, {"H_4", 5}, {"H_I1", 9}, {"H_I2", 16}, {"H_I3", 15}};
  for (const auto& [name, d] : expected) {
    const auto h = build_hamiltonian(builtin_hamiltonian(name));
    CHECK(h.dim() == 16);
    const auto ev = oracle::jacobi_eigenvalues(h.matrix());
    INFO(name);
    CHECK(oracle::count_distinct(ev) == d);
  }
}

TEST_CASE("H_I1 alternate reading (Z field on qubits 1..3 only) does not give d = 9") {
  HamiltonianSpec alt{4, {}};
  for (const char* s : {"XXII", "XIXI", "IXXI"}) alt.terms.push_back({0.5, PauliString::parse(s)});
  for (const char* s : {"ZIII", "IZII", "IIZI"}) alt.terms.push_back({0.5, PauliString::parse(s)});
  const auto ev = oracle::jacobi_eigenvalues(build_hamiltonian(alt).matrix());
  CHECK(oracle::count_distinct(ev) == 5);
}

TEST_CASE("Hamiltonian spec file parsing") {
  std::istringstream ok(
      "# transverse-field pair\n"
      "\n"
      "0.5 XX\n"
      "  -0.25 zi  \n"
      "+1e-1 IY\n");
  const auto spec = parse_hamiltonian_spec(ok);
  CHECK(spec.n_qubits == 2);
  REQUIRE(spec.terms.size() == 3);
  CHECK(spec.terms[1].coefficient == -0.25);
  CHECK(spec.terms[1].string.to_string() == "ZI");
  CHECK(spec.terms[2].coefficient == doctest::Approx(0.1));

  std::istringstream mixed("0.5 XX\n0.5 XXX\n");
  CHECK_THROWS_WITH_AS(parse_hamiltonian_spec(mixed), doctest::Contains("line 2"),
                       std::invalid_argument);
  std::istringstream bad_letter("0.5 XA\n");
  CHECK_THROWS_AS(parse_hamiltonian_spec(bad_letter), std::invalid_argument);
  std::istringstream bad_coeff("half XX\n");
  CHECK_THROWS_AS(parse_hamiltonian_spec(bad_coeff), std::invalid_argument);
  std::istringstream extra("0.5 XX YY\n");
  CHECK_THROWS_AS(parse_hamiltonian_spec(extra), std::invalid_argument);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_hamiltonian_spec(empty), std::invalid_argument);
  CHECK_THROWS_AS(load_hamiltonian_spec("/nonexistent/spec.txt"), std::invalid_argument);
}
