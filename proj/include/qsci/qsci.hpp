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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qsci/integrals.hpp"
#include "qsci/pauli.hpp"
#include "qsci/selection.hpp"
#include "qsci/subspace.hpp"

namespace qsci {

/// Eigenpairs of a subspace Hamiltonian; vectors are CI coefficients over
/// configs, one column per state.
struct SubspaceSolution {
  std::vector<Determinant> configs;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;

  int n_states() const { return static_cast<int>(eigenvalues.size()); }
  std::size_t dim() const { return configs.size(); }
  PriorState prior(int state) const { return {configs, vectors.col(state)}; }
  nlohmann::json to_json() const;
};

/// k lowest pairs of H restricted to the configurations. A list mixing
/// particle numbers is handled as a Fock-space block matrix.
SubspaceSolution solve_subspace(std::span<const Determinant> configs, const MolecularIntegrals& mol,
                                int k = 1);

/// Throws std::invalid_argument when the selection is empty (everything
/// was post-selected away).
SubspaceSolution qsci_ground(const SelectionResult& selection, const MolecularIntegrals& mol);
SubspaceSolution qsci_ground(const SampleCounts& counts, std::size_t r, const SectorFilter& filter,
                             const MolecularIntegrals& mol);
/// Idealized sampling from the state vector.
SubspaceSolution qsci_ground(const StateVector& state, std::size_t r, const SectorFilter& filter,
                             const MolecularIntegrals& mol);

/// One diagonalization in the merged subspace of several input states.
SubspaceSolution qsci_single_diag(std::span<const SelectionResult> selections, std::size_t r,
                                  MergeStrategy strategy, const MolecularIntegrals& mol,
                                  int n_states);

/// State k diagonalizes H + sum_{i<k} beta_i |psi_i><psi_i| over the first
/// r_list[k] configurations of selections[k] and keeps the lowest pair.
/// Empty betas select default_beta(jordan_wigner(mol)) for every prior.
std::vector<SubspaceSolution> qsci_sequential(std::span<const SelectionResult> selections,
                                              std::span<const std::size_t> r_list,
                                              const MolecularIntegrals& mol,
                                              std::span<const double> betas = {});

/// 2 * sum_j |c_j| * 1.01 over the non-identity terms.
double default_beta(const QubitHamiltonian& h);

/// sum_{x,y} c_x <x|O|y> c_y for state i of the solution.
double expectation_on_output(const SubspaceSolution& sol, int state, const MolecularIntegrals& op);
double expectation_on_output(const SubspaceSolution& sol, int state, const QubitHamiltonian& op);

/// ||H_R c - E c|| for state i against the plain subspace Hamiltonian.
double residual_norm(const SubspaceSolution& sol, int state, const MolecularIntegrals& mol);

}  // namespace qsci
