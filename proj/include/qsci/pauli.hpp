// Copyright 2026 The QSCI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsci/determinant.hpp"

namespace qsci {

using cplx = std::complex<double>;

/// Pauli letters packed as symplectic bit masks: X -> (x=1,z=0),
/// Z -> (0,1), Y -> (1,1). Printed with qubit 0 rightmost, like bitstrings.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits) : n_qubits_(n_qubits) {}
  PauliString(std::uint64_t x, std::uint64_t z, int n_qubits)
      : x_(x), z_(z), n_qubits_(n_qubits) {}

  static PauliString from_string(std::string_view text);
  static PauliString single(int n_qubits, int qubit, char letter);

  std::string to_string() const;

  std::uint64_t x() const noexcept { return x_; }
  std::uint64_t z() const noexcept { return z_; }
  int n_qubits() const noexcept { return n_qubits_; }
  char letter(int qubit) const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  /// Qubits with a non-identity letter.
  std::uint64_t support() const noexcept { return x_ | z_; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return std::tie(a.x_, a.z_) <=> std::tie(b.x_, b.z_);
  }

 private:
  std::uint64_t x_ = 0, z_ = 0;
  int n_qubits_ = 0;
};

/// Product a*b = phase * c; returns (phase, c).
std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b);

/// Letter-wise qubit-wise commutation: at each qubit the letters agree or
/// one of them is the identity.
bool qubit_wise_commute(const PauliString& a, const PauliString& b);

/// <x|P|y>; nonzero only if the X/Y letters cover exactly the differing bits.
cplx pauli_matrix_element(const PauliString& p, const Determinant& x,
                          const Determinant& y);

struct PauliTerm {
  cplx coefficient;
  PauliString string;
};

/// Weighted Pauli sum  sum_j c_j P_j.
class QubitHamiltonian {
 public:
  static constexpr double kDropTolerance = 1e-14;

  QubitHamiltonian() = default;
  explicit QubitHamiltonian(int n_qubits) : n_qubits_(n_qubits) {}
  QubitHamiltonian(int n_qubits, std::vector<PauliTerm> terms);

  /// Single term / constant helpers.
  static QubitHamiltonian identity(int n_qubits, cplx coefficient = 1.0);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add_term(cplx coefficient, const PauliString& string);

  /// Merges duplicate strings, drops |c| < kDropTolerance, and sorts terms
  /// by (x, z) mask for a canonical order.
  void normalize();

  cplx identity_coefficient() const;
  /// sum_j |c_j|, optionally excluding the identity string.
  double one_norm(bool include_identity = true) const;
  /// Largest |Im c_j|.
  double max_imaginary() const;

  QubitHamiltonian& operator+=(const QubitHamiltonian& other);
  QubitHamiltonian& operator*=(cplx scale);
  friend QubitHamiltonian operator+(QubitHamiltonian a, const QubitHamiltonian& b) {
    return a += b;
  }
  friend QubitHamiltonian operator*(QubitHamiltonian a, cplx s) { return a *= s; }
  friend QubitHamiltonian operator*(const QubitHamiltonian& a, const QubitHamiltonian& b);

  /// <x|H|y> by letter-wise action of each term.
  cplx matrix_element(const Determinant& x, const Determinant& y) const;

  /// Dense 2^n x 2^n matrix; test/oracle use only (n <= 14).
  Eigen::MatrixXcd dense() const;

  /// Line format "coefficient string"; complex coefficients print as
  /// "re+imj" only when the imaginary part is nonzero.
  std::string to_text() const;
  static QubitHamiltonian from_text(std::string_view text);

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

struct MolecularIntegrals;

/// Jordan-Wigner encoding: a_j = Z_0 ... Z_{j-1} (X_j + i Y_j) / 2 over the
/// interleaved spin-orbital layout. Expanded symbolically in Pauli algebra.
QubitHamiltonian jordan_wigner(const MolecularIntegrals& mol);

struct SymmetryOperators {
  QubitHamiltonian sz;
  QubitHamiltonian number;
};

/// S_z = 1/4 sum_p (Z_{2p+1} - Z_{2p}),  N = sum_b (I - Z_b)/2.
SymmetryOperators symmetry_operators(int n_orbitals);

}  // namespace qsci
