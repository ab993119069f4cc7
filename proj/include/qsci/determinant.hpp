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

// Slater determinants as occupation bitstrings.
//
// Layout: qubit 2p is the alpha spin orbital of spatial orbital p and qubit
// 2p+1 is its beta partner. A determinant |x> is
//   a+_{b1} a+_{b2} ... a+_{bn} |vac>,  b1 < b2 < ... < bn,
// which is the same sign convention the Jordan-Wigner map produces.
// Textual form prints qubit 0 as the rightmost character.

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qsci {

struct MolecularIntegrals;

inline constexpr int kMaxQubits = 64;

/// Particle-number / spin sector. Spin is stored doubled so it stays integral.
struct Sector {
  int n_electrons = 0;
  int two_sz = 0;

  double sz() const { return 0.5 * two_sz; }
  int n_alpha() const { return (n_electrons + two_sz) / 2; }
  int n_beta() const { return (n_electrons - two_sz) / 2; }

  friend bool operator==(const Sector&, const Sector&) = default;
};

class Determinant {
 public:
  Determinant() = default;
  Determinant(std::uint64_t bits, int n_qubits);

  /// Parses a 0/1 string; the last character is qubit 0.
  static Determinant from_string(std::string_view text);

  std::string to_string() const;

  std::uint64_t bits() const noexcept { return bits_; }
  int n_qubits() const noexcept { return n_qubits_; }
  int n_orbitals() const noexcept { return n_qubits_ / 2; }

  bool occupied(int qubit) const noexcept { return (bits_ >> qubit) & 1u; }
  Determinant flipped(int qubit) const {
    return Determinant(bits_ ^ (std::uint64_t{1} << qubit), n_qubits_);
  }

  std::vector<int> occupied_orbitals() const;

  // Same-length determinants order like their printed bitstrings.
  friend bool operator==(const Determinant&, const Determinant&) = default;
  friend std::strong_ordering operator<=>(const Determinant& a,
                                          const Determinant& b) {
    if (auto c = a.n_qubits_ <=> b.n_qubits_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
  int n_qubits_ = 0;
};

inline constexpr std::uint64_t kAlphaMask = 0x5555555555555555ull;
inline constexpr std::uint64_t kBetaMask = 0xAAAAAAAAAAAAAAAAull;

inline int particle_number(const Determinant& d) {
  return std::popcount(d.bits());
}

/// 2*S_z, i.e. (#alpha - #beta).
inline int two_sz(const Determinant& d) {
  return std::popcount(d.bits() & kAlphaMask) -
         std::popcount(d.bits() & kBetaMask);
}

inline double sz(const Determinant& d) { return 0.5 * two_sz(d); }

inline Sector sector_of(const Determinant& d) {
  return {particle_number(d), two_sz(d)};
}

inline bool in_sector(const Determinant& d, const Sector& s) {
  return particle_number(d) == s.n_electrons && two_sz(d) == s.two_sz;
}

/// popcount(x ^ y) / 2. Throws std::invalid_argument on length mismatch.
int excitation_degree(const Determinant& x, const Determinant& y);

/// <x|H|y> by the Slater-Condon rules. Degree > 2 gives exactly zero; the
/// core energy appears on the diagonal only. Throws std::invalid_argument
/// when particle numbers differ.
double slater_condon(const Determinant& x, const Determinant& y,
                     const MolecularIntegrals& mol);

/// All distinct single and double excitations of d, singles first, each in
/// ascending (hole, particle) order. Never contains d itself.
std::vector<Determinant> connected_determinants(const Determinant& d,
                                                bool preserve_sz);

/// Every determinant of the sector on n_orbitals spatial orbitals, ascending.
std::vector<Determinant> sector_determinants(int n_orbitals,
                                             const Sector& sector);

/// Aufbau determinant: lowest n_alpha alpha and n_beta beta orbitals filled.
Determinant hartree_fock_determinant(int n_orbitals, const Sector& sector);

struct DeterminantHash {
  std::size_t operator()(const Determinant& d) const noexcept {
    return std::hash<std::uint64_t>{}(d.bits() * 0x9E3779B97F4A7C15ull);
  }
};

}  // namespace qsci
