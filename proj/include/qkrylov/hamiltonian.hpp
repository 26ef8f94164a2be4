#pragma once

// Pauli-string Hamiltonians on N_Q qubits.
//
// Qubit 1 is the leftmost tensor factor, so it maps to the most significant
// bit of the computational-basis index: |q1 q2 ... qN>.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qkrylov/numerics.hpp"

namespace qkrylov {

inline constexpr std::size_t kMaxQubits = 12;

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

class PauliString {
 public:
  /// Parses e.g. "XIIZ"; throws std::invalid_argument on bad letters or length.
  static PauliString parse(std::string_view letters);

  explicit PauliString(std::vector<Pauli> letters);

  std::size_t n_qubits() const noexcept { return letters_.size(); }
  Pauli at_site(std::size_t site) const { return letters_.at(site - 1); }  // 1-based
  const std::vector<Pauli>& letters() const noexcept { return letters_; }
  std::string to_string() const;

  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> letters_;
};

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

struct HamiltonianSpec {
  std::size_t n_qubits = 0;
  std::vector<PauliTerm> terms;

  /// Throws std::invalid_argument if a string length differs from n_qubits,
  /// a coefficient is non-finite, or n_qubits is outside [1, kMaxQubits].
  void validate() const;
};

/// I (x) ... (x) sigma (x) ... (x) I with sigma at 1-based `site`.
HermitianOperator single_site_pauli(Pauli letter, std::size_t site, std::size_t n_qubits);

HermitianOperator pauli_string_operator(const PauliString& string);

HermitianOperator build_hamiltonian(const HamiltonianSpec& spec);

/// Builtin four-qubit Hamiltonians: H_1..H_4 (x rotations on the first k
/// qubits) and the Ising models H_I1..H_I3. Accepted spellings are the
/// display names ("H_I2") and the compact form ("HI2"); matching is
/// case-insensitive. Throws std::invalid_argument listing valid names.
HamiltonianSpec builtin_hamiltonian(std::string_view name);

/// Display names in canonical order: H_1, H_2, H_3, H_4, H_I1, H_I2, H_I3.
const std::vector<std::string>& builtin_hamiltonian_names();

/// Canonical display name for any accepted spelling, or empty if unknown.
std::string canonical_hamiltonian_name(std::string_view name);

/// Reads the text format: one `<coefficient> <pauli-string>` per line;
/// blank lines and lines starting with '#' are ignored. All strings must
/// share one length, which fixes n_qubits.
HamiltonianSpec parse_hamiltonian_spec(std::istream& in);
HamiltonianSpec load_hamiltonian_spec(const std::filesystem::path& path);

}  // namespace qkrylov
