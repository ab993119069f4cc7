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

#include "qsci/determinant.hpp"

#include <algorithm>
#include <stdexcept>

#include "qsci/integrals.hpp"

namespace qsci {

Determinant::Determinant(std::uint64_t bits, int n_qubits)
    : bits_(bits), n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits)
    throw std::invalid_argument("determinant length out of range");
  if (n_qubits < kMaxQubits && (bits >> n_qubits) != 0)
    throw std::invalid_argument("determinant bits exceed its length");
}

Determinant Determinant::from_string(std::string_view text) {
  const int n = static_cast<int>(text.size());
  if (n > kMaxQubits) throw std::invalid_argument("bitstring longer than 64 qubits");
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    const char c = text[n - 1 - i];
    if (c == '1') bits |= std::uint64_t{1} << i;
    else if (c != '0')
      throw std::invalid_argument("bitstring must contain only 0/1: '" + std::string(text) + "'");
  }
  return Determinant(bits, n);
}

std::string Determinant::to_string() const {
  std::string out(n_qubits_, '0');
  for (int i = 0; i < n_qubits_; ++i)
    if (occupied(i)) out[n_qubits_ - 1 - i] = '1';
  return out;
}

std::vector<int> Determinant::occupied_orbitals() const {
  std::vector<int> occ;
  occ.reserve(std::popcount(bits_));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) occ.push_back(std::countr_zero(b));
  return occ;
}

int excitation_degree(const Determinant& x, const Determinant& y) {
  if (x.n_qubits() != y.n_qubits())
    throw std::invalid_argument("excitation_degree: determinant lengths differ");
  return std::popcount(x.bits() ^ y.bits()) / 2;
}

namespace {

// Number of occupied spin orbitals strictly between a and b.
inline int between(std::uint64_t bits, int a, int b) {
  if (a > b) std::swap(a, b);
  if (b - a < 2) return 0;
  const std::uint64_t mask = ((std::uint64_t{1} << b) - 1) & ~((std::uint64_t{2} << a) - 1);
  return std::popcount(bits & mask);
}

// <PQ|RS> over spin orbitals, physicists' notation, real orbitals.
inline double spin_eri(const MolecularIntegrals& mol, int P, int Q, int R, int S) {
  if ((P & 1) != (R & 1) || (Q & 1) != (S & 1)) return 0.0;
  return mol.eri(P >> 1, R >> 1, Q >> 1, S >> 1);
}

inline double spin_h(const MolecularIntegrals& mol, int P, int Q) {
  if ((P & 1) != (Q & 1)) return 0.0;
  return mol.h(P >> 1, Q >> 1);
}

double diagonal(std::uint64_t bits, const MolecularIntegrals& mol) {
  double e = mol.core_energy;
  for (std::uint64_t bi = bits; bi != 0; bi &= bi - 1) {
    const int i = std::countr_zero(bi);
    e += mol.h(i >> 1, i >> 1);
    for (std::uint64_t bj = bits & ((std::uint64_t{1} << i) - 1); bj != 0; bj &= bj - 1) {
      const int j = std::countr_zero(bj);
      // Coulomb minus same-spin exchange, each pair once.
      e += mol.eri(i >> 1, i >> 1, j >> 1, j >> 1);
      if ((i & 1) == (j & 1)) e -= mol.eri(i >> 1, j >> 1, j >> 1, i >> 1);
    }
  }
  return e;
}

}  // namespace

double slater_condon(const Determinant& x, const Determinant& y,
                     const MolecularIntegrals& mol) {
  if (particle_number(x) != particle_number(y))
    throw std::invalid_argument("slater_condon: particle numbers differ");
  if (x.n_qubits() != y.n_qubits())
    throw std::invalid_argument("slater_condon: determinant lengths differ");
  const std::uint64_t xb = x.bits(), yb = y.bits();
  const std::uint64_t diff = xb ^ yb;
  const int degree = std::popcount(diff) / 2;
  if (degree == 0) return diagonal(xb, mol);
  if (degree > 2) return 0.0;

  // <x| ... |y>: holes are occupied in y only, particles in x only.
  const std::uint64_t holes = yb & diff;
  const std::uint64_t particles = xb & diff;

  if (degree == 1) {
    const int i = std::countr_zero(holes);
    const int a = std::countr_zero(particles);
    double v = spin_h(mol, a, i);
    for (std::uint64_t bk = yb & ~(std::uint64_t{1} << i); bk != 0; bk &= bk - 1) {
      const int k = std::countr_zero(bk);
      v += spin_eri(mol, a, k, i, k) - spin_eri(mol, a, k, k, i);
    }
    return (between(yb, i, a) & 1) ? -v : v;
  }

  // Double: sign of <x| a+_a a+_b a_j a_i |y> with i<j, a<b.
  const int i = std::countr_zero(holes);
  const int j = 63 - std::countl_zero(holes);
  const int a = std::countr_zero(particles);
  const int b = 63 - std::countl_zero(particles);
  std::uint64_t w = yb;
  int parity = std::popcount(w & ((std::uint64_t{1} << i) - 1));  // a_i
  w &= ~(std::uint64_t{1} << i);
  parity += std::popcount(w & ((std::uint64_t{1} << j) - 1));  // a_j
  w &= ~(std::uint64_t{1} << j);
  parity += std::popcount(w & ((std::uint64_t{1} << b) - 1));  // a+_b
  w |= std::uint64_t{1} << b;
  parity += std::popcount(w & ((std::uint64_t{1} << a) - 1));  // a+_a
  const double v = spin_eri(mol, a, b, i, j) - spin_eri(mol, a, b, j, i);
  return (parity & 1) ? -v : v;
}

std::vector<Determinant> connected_determinants(const Determinant& d,
                                                bool preserve_sz) {
  const int n = d.n_qubits();
  const std::uint64_t bits = d.bits();
  std::vector<int> occ, vir;
  for (int q = 0; q < n; ++q) (d.occupied(q) ? occ : vir).push_back(q);

  std::vector<Determinant> out;
  for (int i : occ)
    for (int a : vir) {
      if (preserve_sz && (i & 1) != (a & 1)) continue;
      out.emplace_back(bits ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << a), n);
    }
  for (std::size_t ii = 0; ii < occ.size(); ++ii)
    for (std::size_t jj = ii + 1; jj < occ.size(); ++jj)
      for (std::size_t aa = 0; aa < vir.size(); ++aa)
        for (std::size_t bb = aa + 1; bb < vir.size(); ++bb) {
          const int i = occ[ii], j = occ[jj], a = vir[aa], b = vir[bb];
          if (preserve_sz && ((i & 1) + (j & 1)) != ((a & 1) + (b & 1))) continue;
          out.emplace_back(bits ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << j) ^
                               (std::uint64_t{1} << a) ^ (std::uint64_t{1} << b),
                           n);
        }
  return out;
}

namespace {

// Spatial-orbital occupation strings with k bits set out of n, ascending.
std::vector<std::uint64_t> combinations(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {0};
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    out.push_back(v);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

// Spread spatial bits p -> spin-orbital bit 2p + offset.
std::uint64_t interleave(std::uint64_t spatial, int offset) {
  std::uint64_t out = 0;
  for (std::uint64_t b = spatial; b != 0; b &= b - 1)
    out |= std::uint64_t{1} << (2 * std::countr_zero(b) + offset);
  return out;
}

}  // namespace

std::vector<Determinant> sector_determinants(int n_orbitals, const Sector& sector) {
  if ((sector.n_electrons + sector.two_sz) % 2 != 0) return {};
  const int na = sector.n_alpha(), nb = sector.n_beta();
  const auto alpha = combinations(n_orbitals, na);
  const auto beta = combinations(n_orbitals, nb);
  std::vector<Determinant> out;
  out.reserve(alpha.size() * beta.size());
  for (auto a : alpha)
    for (auto b : beta) out.emplace_back(interleave(a, 0) | interleave(b, 1), 2 * n_orbitals);
  std::sort(out.begin(), out.end());
  return out;
}

Determinant hartree_fock_determinant(int n_orbitals, const Sector& sector) {
  const int na = sector.n_alpha(), nb = sector.n_beta();
  if (na < 0 || nb < 0 || na > n_orbitals || nb > n_orbitals ||
      (sector.n_electrons + sector.two_sz) % 2 != 0)
    throw std::invalid_argument("sector not representable on the given orbitals");
  const std::uint64_t a = na == 0 ? 0 : (std::uint64_t{1} << na) - 1;
  const std::uint64_t b = nb == 0 ? 0 : (std::uint64_t{1} << nb) - 1;
  return Determinant(interleave(a, 0) | interleave(b, 1), 2 * n_orbitals);
}

}  // namespace qsci
