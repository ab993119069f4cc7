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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qsci/determinant.hpp"

namespace qsci {

/// Second-quantized molecular Hamiltonian over real spatial orbitals.
///
/// Two-body integrals are chemists' notation (pq|rs) and kept as a dense
/// n^4 tensor with all eight permutation images filled in. MS2 follows the
/// N_alpha - N_beta convention.
struct MolecularIntegrals {
  int n_orbitals = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  std::vector<double> one_body;  // n*n, row-major
  std::vector<double> two_body;  // n^4, index ((p*n+q)*n+r)*n+s

  MolecularIntegrals() = default;
  MolecularIntegrals(int n_orbitals, int n_electrons, int ms2);

  int n_qubits() const { return 2 * n_orbitals; }
  Sector reference_sector() const { return {n_electrons, ms2}; }

  double h(int p, int q) const { return one_body[p * n_orbitals + q]; }
  double eri(int p, int q, int r, int s) const {
    const std::size_t n = n_orbitals;
    return two_body[((p * n + q) * n + r) * n + s];
  }

  /// Sets h_pq and h_qp.
  void set_h(int p, int q, double value);
  /// Sets all eight permutation images of (pq|rs).
  void set_eri(int p, int q, int r, int s, double value);

  /// Largest deviation from h_pq = h_qp and the 8-fold (pq|rs) symmetry.
  double symmetry_violation() const;
};

/// Parses a Knowles-Handy FCIDUMP document. ORBSYM/ISYM are accepted and
/// ignored. Errors raise ParseError with the offending line number.
MolecularIntegrals parse_fcidump(std::string_view text);
MolecularIntegrals read_fcidump(const std::filesystem::path& path);

/// Writes every unique integral with shortest round-trip formatting, so
/// parse(write(parse(text))) reproduces parse(text) bit for bit.
std::string write_fcidump(const MolecularIntegrals& mol);

/// Diagnostics echo of the parsed integrals.
nlohmann::json to_json(const MolecularIntegrals& mol);

/// Frozen-core / active-space reduction. Frozen orbitals are doubly
/// occupied and folded into the core energy and an effective one-body
/// operator; orbitals in neither list are dropped. The output orbitals are
/// numbered in the order given by `active`.
MolecularIntegrals freeze_core(const MolecularIntegrals& mol,
                               std::span<const int> frozen,
                               std::span<const int> active);

inline constexpr std::size_t kDenseCasciCap = 20000;

struct CasciResult {
  std::vector<Determinant> basis;  // ascending sector determinants
  Eigen::VectorXd eigenvalues;     // ascending
  Eigen::MatrixXd eigenvectors;    // columns over `basis`
};

/// Dense exact diagonalization of the sector Hamiltonian. Throws
/// std::invalid_argument for an empty sector or one above kDenseCasciCap.
CasciResult casci_dense(const MolecularIntegrals& mol, const Sector& sector);

}  // namespace qsci
