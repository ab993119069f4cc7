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

#include "qsci/subspace.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "qsci/kernels.hpp"

namespace qsci {

namespace {

void check_configs(std::span<const Determinant> configs, const MolecularIntegrals& mol) {
  for (const auto& d : configs)
    if (d.n_qubits() != mol.n_qubits())
      throw std::invalid_argument("configuration " + d.to_string() + " does not match " +
                                  std::to_string(mol.n_qubits()) + " spin orbitals");
  std::unordered_set<Determinant, DeterminantHash> seen;
  for (const auto& d : configs)
    if (!seen.insert(d).second) throw std::invalid_argument("configuration " + d.to_string() + " appears twice");
}

bool use_sparse(std::size_t n, MatrixStorage storage) {
  if (storage == MatrixStorage::kAuto) return static_cast<Eigen::Index>(n) > kDenseSolverThreshold;
  return storage == MatrixStorage::kSparse;
}

}  // namespace

Eigen::SparseMatrix<double> subspace_sparse(std::span<const Determinant> configs,
                                            const MolecularIntegrals& mol) {
  const std::int64_t n = static_cast<std::int64_t>(configs.size());
  std::unordered_map<std::uint64_t, std::int64_t> index;
  index.reserve(configs.size() * 2);
  for (std::int64_t i = 0; i < n; ++i) index.emplace(configs[i].bits(), i);

  // Connected-determinant count of a typical row, to choose the scan.
  std::size_t n_connected = 0;
  if (n > 0) {
    const std::size_t ne = std::popcount(configs[0].bits());
    const std::size_t nv = configs[0].n_qubits() - ne;
    n_connected = ne * nv + (ne * (ne - 1) / 2) * (nv * (nv - 1) / 2);
  }
  const bool pairwise = static_cast<std::size_t>(n) <= n_connected;

  using Triplet = Eigen::Triplet<double>;
  std::vector<std::vector<Triplet>> per_row(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& row = per_row[i];
    const Determinant& x = configs[i];
    const int nx = std::popcount(x.bits());
    auto push = [&](std::int64_t j) {
      const double v = slater_condon(x, configs[j], mol);
      if (v != 0.0) {
        row.emplace_back(i, j, v);
        row.emplace_back(j, i, v);
      }
    };
    row.emplace_back(i, i, slater_condon(x, x, mol));
    if (pairwise) {
      for (std::int64_t j = 0; j < i; ++j) {
        const std::uint64_t diff = x.bits() ^ configs[j].bits();
        if (std::popcount(diff) <= 4 && std::popcount(configs[j].bits()) == nx) push(j);
      }
    } else {
      for (const auto& y : connected_determinants(x, false)) {
        const auto it = index.find(y.bits());
        if (it != index.end() && it->second < i) push(it->second);
      }
    }
  }
  std::vector<Triplet> all;
  for (auto& row : per_row) all.insert(all.end(), row.begin(), row.end());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(all.begin(), all.end());
  return m;
}

SubspaceMatrix build_fock_subspace_hamiltonian(std::span<const Determinant> configs,
                                               const MolecularIntegrals& mol,
                                               MatrixStorage storage) {
  check_configs(configs, mol);
  if (use_sparse(configs.size(), storage)) return SubspaceMatrix(subspace_sparse(configs, mol));
  return SubspaceMatrix(kernels::subspace_matrix(configs, mol));
}

SubspaceMatrix build_subspace_hamiltonian(std::span<const Determinant> configs,
                                          const MolecularIntegrals& mol, MatrixStorage storage) {
  if (configs.empty()) throw std::invalid_argument("subspace has no configurations");
  for (const auto& d : configs)
    if (particle_number(d) != particle_number(configs.front()))
      throw std::invalid_argument("subspace configurations mix particle numbers (" +
                                  configs.front().to_string() + " vs " + d.to_string() + ")");
  return build_fock_subspace_hamiltonian(configs, mol, storage);
}

Eigen::VectorXd project_prior(const PriorState& prior, std::span<const Determinant> configs) {
  if (static_cast<std::size_t>(prior.vector.size()) != prior.configs.size())
    throw std::invalid_argument("prior state: vector length differs from its configuration count");
  std::unordered_map<std::uint64_t, Eigen::Index> where;
  for (std::size_t i = 0; i < prior.configs.size(); ++i) where.emplace(prior.configs[i].bits(), i);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i)
    if (auto it = where.find(configs[i].bits()); it != where.end()) v[i] = prior.vector[it->second];
  return v;
}

SubspaceMatrix deflated_subspace_matrix(std::span<const Determinant> configs,
                                        const MolecularIntegrals& mol,
                                        std::span<const PriorState> priors,
                                        std::span<const double> betas, MatrixStorage storage) {
  if (priors.size() != betas.size())
    throw std::invalid_argument("deflation: " + std::to_string(betas.size()) + " betas for " +
                                std::to_string(priors.size()) + " prior states");
  for (double b : betas)
    if (!(b >= 0.0)) throw std::invalid_argument("deflation: beta must be non-negative");
  SubspaceMatrix m = build_subspace_hamiltonian(configs, mol, storage);
  for (std::size_t i = 0; i < priors.size(); ++i)
    if (betas[i] != 0.0) m.add_rank_one(betas[i], project_prior(priors[i], configs));
  return m;
}

}  // namespace qsci
