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

#include "qsci/qsci.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsci/error.hpp"

namespace qsci {

nlohmann::json SubspaceSolution::to_json() const {
  nlohmann::json cfg = nlohmann::json::array();
  for (const auto& d : configs) cfg.push_back(d.to_string());
  nlohmann::json vals = nlohmann::json::array(), vecs = nlohmann::json::array();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    vals.push_back(eigenvalues[i]);
    vecs.push_back(std::vector<double>(vectors.col(i).data(), vectors.col(i).data() + vectors.rows()));
  }
  return {{"dimension", configs.size()}, {"configs", cfg}, {"eigenvalues", vals}, {"vectors", vecs}};
}

namespace {

bool mixed_particle_numbers(std::span<const Determinant> configs) {
  for (const auto& d : configs)
    if (particle_number(d) != particle_number(configs.front())) return true;
  return false;
}

SubspaceSolution solve(std::span<const Determinant> configs, const SubspaceMatrix& m, int k) {
  const EigenPairs pairs = diagonalize_lowest(m, k);
  // Residual contract on every returned pair.
  const Eigen::MatrixXd r = m.multiply(pairs.vectors) - pairs.vectors * pairs.values.asDiagonal();
  for (int i = 0; i < k; ++i)
    if (!(r.col(i).norm() <= 1e-8))
      throw NumericalError("eigen-residual " + std::to_string(r.col(i).norm()) + " exceeds 1e-8");
  return {{configs.begin(), configs.end()}, pairs.values, pairs.vectors};
}

void require_configs(std::span<const Determinant> configs) {
  if (configs.empty())
    throw std::invalid_argument("selection is empty; every outcome was post-selected away");
}

}  // namespace

SubspaceSolution solve_subspace(std::span<const Determinant> configs, const MolecularIntegrals& mol,
                                int k) {
  require_configs(configs);
  const SubspaceMatrix m = mixed_particle_numbers(configs)
                               ? build_fock_subspace_hamiltonian(configs, mol)
                               : build_subspace_hamiltonian(configs, mol);
  return solve(configs, m, k);
}

SubspaceSolution qsci_ground(const SelectionResult& selection, const MolecularIntegrals& mol) {
  return solve_subspace(selection.configs, mol, 1);
}

SubspaceSolution qsci_ground(const SampleCounts& counts, std::size_t r, const SectorFilter& filter,
                             const MolecularIntegrals& mol) {
  return qsci_ground(select_top_r(counts, r, filter), mol);
}

SubspaceSolution qsci_ground(const StateVector& state, std::size_t r, const SectorFilter& filter,
                             const MolecularIntegrals& mol) {
  return qsci_ground(idealized_top_r(state, r, filter), mol);
}

SubspaceSolution qsci_single_diag(std::span<const SelectionResult> selections, std::size_t r,
                                  MergeStrategy strategy, const MolecularIntegrals& mol,
                                  int n_states) {
  if (n_states < 1) throw std::invalid_argument("qsci_single_diag: n_states must be at least 1");
  if (r < static_cast<std::size_t>(n_states))
    throw std::invalid_argument("qsci_single_diag: r=" + std::to_string(r) + " is smaller than n_states=" +
                                std::to_string(n_states));
  const SelectionResult merged = merge_subspaces(selections, r, strategy);
  if (merged.size() < static_cast<std::size_t>(n_states))
    throw std::invalid_argument("qsci_single_diag: merged subspace has fewer configurations than states");
  return solve_subspace(merged.configs, mol, n_states);
}

double default_beta(const QubitHamiltonian& h) { return 2.0 * h.one_norm(false) * 1.01; }

std::vector<SubspaceSolution> qsci_sequential(std::span<const SelectionResult> selections,
                                              std::span<const std::size_t> r_list,
                                              const MolecularIntegrals& mol,
                                              std::span<const double> betas) {
  const std::size_t n = selections.size();
  if (r_list.size() != n)
    throw std::invalid_argument("qsci_sequential: r_list has " + std::to_string(r_list.size()) +
                                " entries for " + std::to_string(n) + " states");
  std::vector<double> beta(betas.begin(), betas.end());
  if (beta.empty() && n > 1) beta.assign(n - 1, default_beta(jordan_wigner(mol)));
  if (n > 1 && beta.size() < n - 1)
    throw std::invalid_argument("qsci_sequential: need a beta for each of the " + std::to_string(n - 1) +
                                " prior states");

  std::vector<SubspaceSolution> out;
  std::vector<PriorState> priors;
  for (std::size_t k = 0; k < n; ++k) {
    if (r_list[k] < 1) throw std::invalid_argument("qsci_sequential: r must be at least 1");
    const auto configs = selections[k].truncated(r_list[k]).configs;
    require_configs(configs);
    const SubspaceMatrix m =
        deflated_subspace_matrix(configs, mol, priors, std::span<const double>(beta.data(), k));
    out.push_back(solve(configs, m, 1));
    priors.push_back(out.back().prior(0));
  }
  return out;
}

double expectation_on_output(const SubspaceSolution& sol, int state, const MolecularIntegrals& op) {
  if (state < 0 || state >= sol.n_states()) throw std::out_of_range("expectation_on_output: state index");
  if (!sol.configs.empty() && op.n_qubits() != sol.configs.front().n_qubits())
    throw std::invalid_argument("expectation_on_output: observable has " + std::to_string(op.n_orbitals) +
                                " orbitals, solution has " +
                                std::to_string(sol.configs.front().n_orbitals()));
  const Eigen::VectorXd c = sol.vectors.col(state);
  return c.dot(build_fock_subspace_hamiltonian(sol.configs, op).multiply(c));
}

double expectation_on_output(const SubspaceSolution& sol, int state, const QubitHamiltonian& op) {
  if (state < 0 || state >= sol.n_states()) throw std::out_of_range("expectation_on_output: state index");
  if (!sol.configs.empty() && op.n_qubits() != sol.configs.front().n_qubits())
    throw std::invalid_argument("expectation_on_output: observable width differs from the solution");
  const Eigen::VectorXd c = sol.vectors.col(state);
  const std::size_t n = sol.configs.size();
  std::vector<cplx> rows(n);
#pragma omp parallel for schedule(dynamic, 8) if (n > 64)
  for (std::size_t i = 0; i < n; ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (c[j] != 0.0) row += op.matrix_element(sol.configs[i], sol.configs[j]) * c[j];
    rows[i] = c[i] * row;
  }
  cplx total = 0.0;
  for (const auto& v : rows) total += v;
  if (std::abs(total.imag()) > 1e-8) throw NumericalError("observable expectation is not real");
  return total.real();
}

double residual_norm(const SubspaceSolution& sol, int state, const MolecularIntegrals& mol) {
  const Eigen::VectorXd c = sol.vectors.col(state);
  const SubspaceMatrix m = build_fock_subspace_hamiltonian(sol.configs, mol);
  return (m.multiply(c) - sol.eigenvalues[state] * c).norm();
}

}  // namespace qsci
