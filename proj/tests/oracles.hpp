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

// Test-only references built straight from definitions, sharing no code
// with the library kernels they check.

#include <bit>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include "qsci/integrals.hpp"

namespace qsci::testing {

using SpMat = Eigen::SparseMatrix<double>;

// Annihilator on spin orbital j in the occupation basis, bit q = qubit q.
inline SpMat annihilator(int n_qubits, int j) {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  std::vector<Eigen::Triplet<double>> t;
  for (std::uint64_t x = 0; x < dim; ++x) {
    if (!((x >> j) & 1)) continue;
    const int sign = std::popcount(x & ((std::uint64_t{1} << j) - 1)) % 2 ? -1 : 1;
    t.emplace_back(static_cast<int>(x ^ (std::uint64_t{1} << j)), static_cast<int>(x), sign);
  }
  SpMat a(dim, dim);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

// Second-quantized Hamiltonian over the full Fock space, interleaved spin
// orbitals (2p alpha, 2p+1 beta), chemists' integrals.
inline SpMat fock_hamiltonian(const MolecularIntegrals& mol) {
  const int nq = mol.n_qubits();
  const std::uint64_t dim = std::uint64_t{1} << nq;
  std::vector<SpMat> a, ad;
  for (int j = 0; j < nq; ++j) {
    a.push_back(annihilator(nq, j));
    ad.push_back(SpMat(a.back().transpose()));
  }
  SpMat h(dim, dim);
  h.setIdentity();
  h *= mol.core_energy;
  const int n = mol.n_orbitals;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int s = 0; s < 2; ++s)
        if (mol.h(p, q) != 0.0) h += mol.h(p, q) * (ad[2 * p + s] * a[2 * q + s]);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = mol.eri(p, q, r, s);
          if (v == 0.0) continue;
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
              h += 0.5 * v * (ad[2 * p + x] * ad[2 * r + y] * a[2 * s + y] * a[2 * q + x]);
        }
  h.prune(0.0);
  return h;
}

// Dense Pauli string from its printed form (qubit 0 rightmost).
inline Eigen::MatrixXcd pauli_dense(const std::string& text) {
  using M = Eigen::MatrixXcd;
  const std::complex<double> i(0, 1);
  M out = M::Identity(1, 1);
  for (char c : text) {  // leftmost char is the highest qubit
    M g(2, 2);
    switch (c) {
      case 'X': g << 0, 1, 1, 0; break;
      case 'Y': g << 0, -i, i, 0; break;
      case 'Z': g << 1, 0, 0, -1; break;
      default: g = M::Identity(2, 2);
    }
    out = Eigen::kroneckerProduct(out, g).eval();
  }
  return out;
}

}  // namespace qsci::testing
