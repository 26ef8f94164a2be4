#include "qkrylov/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace qkrylov {

namespace {

Pauli parse_letter(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: {
      std::string msg = "invalid Pauli letter '";
      msg += c;
      msg += "' (expected one of I, X, Y, Z)";
      throw std::invalid_argument(msg);
    }
  }
}

void require_qubit_count(std::size_t n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n_qubits));
  }
}

// Adds coefficient * P into `out` without forming tensor products.
void accumulate_pauli(const PauliString& p, double coefficient, ComplexMatrix& out) {
  const std::size_t n = p.n_qubits();
  const Index dim = Index{1} << n;
  for (Index col = 0; col < dim; ++col) {
    Index row = col;
    Complex amp = coefficient;
    for (std::size_t site = 1; site <= n; ++site) {
      const Index mask = Index{1} << (n - site);
      const bool bit = (col & mask) != 0;
      switch (p.at_site(site)) {
        case Pauli::I: break;
        case Pauli::X: row ^= mask; break;
        case Pauli::Y:
          row ^= mask;
          amp *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
          break;
        case Pauli::Z:
          if (bit) amp = -amp;
          break;
      }
    }
    out(row, col) += amp;
  }
}

struct Builtin {
  const char* display;
  const char* compact;
  HamiltonianSpec (*make)();
};

PauliString xx(std::size_t i, std::size_t j) {
  std::vector<Pauli> letters(4, Pauli::I);
  letters[i - 1] = Pauli::X;
  letters[j - 1] = Pauli::X;
  return PauliString(std::move(letters));
}

PauliString single(Pauli letter, std::size_t site) {
  std::vector<Pauli> letters(4, Pauli::I);
  letters[site - 1] = letter;
  return PauliString(std::move(letters));
}

HamiltonianSpec x_rotation(std::size_t k) {
  HamiltonianSpec spec{4, {}};
  for (std::size_t i = 1; i <= k; ++i) spec.terms.push_back({0.5, single(Pauli::X, i)});
  return spec;
}

HamiltonianSpec ising(const std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>>& couplings) {
  HamiltonianSpec spec{4, {}};
  for (const auto& [pair, j] : couplings) spec.terms.push_back({j, xx(pair.first, pair.second)});
  for (std::size_t i = 1; i <= 4; ++i) spec.terms.push_back({0.5, single(Pauli::Z, i)});
  return spec;
}

const Builtin kBuiltins[] = {
    {"H_1", "H1", [] { return x_rotation(1); }},
    {"H_2", "H2", [] { return x_rotation(2); }},
    {"H_3", "H3", [] { return x_rotation(3); }},
    {"H_4", "H4", [] { return x_rotation(4); }},
    // XX couplings only among qubits 1..3; the Z field covers all four qubits.
    {"H_I1", "HI1", [] { return ising({{{1, 2}, 0.5}, {{1, 3}, 0.5}, {{2, 3}, 0.5}}); }},
    {"H_I2", "HI2",
     [] {
       return ising({{{1, 2}, 0.4}, {{1, 3}, 0.5}, {{1, 4}, 0.5},
                     {{2, 3}, 0.5}, {{2, 4}, 0.5}, {{3, 4}, 0.5}});
     }},
    {"H_I3", "HI3",
     [] {
       return ising({{{1, 2}, 0.35}, {{1, 3}, 0.4}, {{1, 4}, 0.45},
                     {{2, 3}, 0.6}, {{2, 4}, 0.55}, {{3, 4}, 0.5}});
     }},
};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

const Builtin* find_builtin(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (iequals(name, b.display) || iequals(name, b.compact)) return &b;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

PauliString PauliString::parse(std::string_view letters) {
  std::vector<Pauli> out;
  out.reserve(letters.size());
  for (char c : letters) out.push_back(parse_letter(c));
  return PauliString(std::move(out));
}

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
  require_qubit_count(letters_.size());
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (Pauli p : letters_) s.push_back(static_cast<char>(p));
  return s;
}

void HamiltonianSpec::validate() const {
  require_qubit_count(n_qubits);
  for (const auto& term : terms) {
    if (term.string.n_qubits() != n_qubits) {
      throw std::invalid_argument("Pauli string '" + term.string.to_string() + "' has length " +
                                  std::to_string(term.string.n_qubits()) + ", expected " +
                                  std::to_string(n_qubits));
    }
    if (!std::isfinite(term.coefficient)) {
      throw std::invalid_argument("non-finite coefficient on term " + term.string.to_string());
    }
  }
}

HermitianOperator single_site_pauli(Pauli letter, std::size_t site, std::size_t n_qubits) {
  require_qubit_count(n_qubits);
  if (site < 1 || site > n_qubits) {
    throw std::invalid_argument("site " + std::to_string(site) + " out of range [1, " +
                                std::to_string(n_qubits) + "]");
  }
  std::vector<Pauli> letters(n_qubits, Pauli::I);
  letters[site - 1] = letter;
  return pauli_string_operator(PauliString(std::move(letters)));
}

HermitianOperator pauli_string_operator(const PauliString& string) {
  const Index dim = Index{1} << string.n_qubits();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  accumulate_pauli(string, 1.0, m);
  return HermitianOperator(std::move(m));
}

HermitianOperator build_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  const Index dim = Index{1} << spec.n_qubits;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& term : spec.terms) accumulate_pauli(term.string, term.coefficient, m);
  return HermitianOperator(std::move(m));
}

HamiltonianSpec builtin_hamiltonian(std::string_view name) {
  if (const Builtin* b = find_builtin(name)) return b->make();
  std::string msg = "unknown Hamiltonian '" + std::string(name) + "'; valid names:";
  for (const auto& b : kBuiltins) msg += std::string(" ") + b.display;
  throw std::invalid_argument(msg);
}

const std::vector<std::string>& builtin_hamiltonian_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& b : kBuiltins) out.emplace_back(b.display);
    return out;
  }();
  return names;
}

std::string canonical_hamiltonian_name(std::string_view name) {
  const Builtin* b = find_builtin(name);
  return b ? b->display : std::string{};
}

HamiltonianSpec parse_hamiltonian_spec(std::istream& in) {
  HamiltonianSpec spec;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::istringstream fields{std::string(body)};
    std::string coeff_text, letters, extra;
    if (!(fields >> coeff_text >> letters) || (fields >> extra)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected '<coefficient> <pauli-string>'");
    }
    double coefficient = 0.0;
    const char* first = coeff_text.data();
    const char* last = first + coeff_text.size();
    if (first != last && *first == '+') ++first;  // from_chars rejects a leading '+'
    const auto [ptr, ec] = std::from_chars(first, last, coefficient);
    if (ec != std::errc{} || ptr != last) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": bad coefficient '" +
                                  coeff_text + "'");
    }
    PauliString string = [&] {
      try {
        return PauliString::parse(letters);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
      }
    }();
    if (spec.terms.empty()) {
      spec.n_qubits = string.n_qubits();
    } else if (string.n_qubits() != spec.n_qubits) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": Pauli string length " +
                                  std::to_string(string.n_qubits()) + " differs from " +
                                  std::to_string(spec.n_qubits));
    }
    spec.terms.push_back({coefficient, std::move(string)});
  }
  if (spec.terms.empty()) throw std::invalid_argument("Hamiltonian spec contains no terms");
  spec.validate();
  return spec;
}

HamiltonianSpec load_hamiltonian_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Hamiltonian spec file " + path.string());
  return parse_hamiltonian_spec(in);
}

}  // namespace qkrylov
