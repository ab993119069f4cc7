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
#include <Eigen/Sparse>

#include "qsci/determinant.hpp"
#include "qsci/eigensolver.hpp"
#include "qsci/integrals.hpp"

namespace qsci {

enum class MatrixStorage { kAuto, kDense, kSparse };

/// (H_R)_xy = <x|H|y> over the configurations. kAuto stores densely up to
/// kDenseSolverThreshold. Throws std::invalid_argument if the
/// configurations do not share one particle number.
SubspaceMatrix build_subspace_hamiltonian(std::span<const Determinant> configs,
                                          const MolecularIntegrals& mol,
                                          MatrixStorage storage = MatrixStorage::kAuto);

/// Same, but configurations may mix particle numbers (an unfiltered
/// selection). Elements between different particle numbers are zero.
SubspaceMatrix build_fock_subspace_hamiltonian(std::span<const Determinant> configs,
                                               const MolecularIntegrals& mol,
                                               MatrixStorage storage = MatrixStorage::kAuto);

/// Sparse <x|H|y>, any particle-number mix. Row work uses the cheaper of a
/// pairwise scan and a lookup of connected determinants.
Eigen::SparseMatrix<double> subspace_sparse(std::span<const Determinant> configs,
                                            const MolecularIntegrals& mol);

/// A previously found output state: its own configurations and CI vector.
struct PriorState {
  std::vector<Determinant> configs;
  Eigen::VectorXd vector;
};

/// H_R + sum_i beta_i c^(i) c^(i)^T, where c^(i)_x is the prior's
/// coefficient on x, or 0 when x is not among the prior's configurations.
SubspaceMatrix deflated_subspace_matrix(std::span<const Determinant> configs,
                                        const MolecularIntegrals& mol,
                                        std::span<const PriorState> priors,
                                        std::span<const double> betas,
                                        MatrixStorage storage = MatrixStorage::kAuto);

/// Prior coefficients gathered onto a configuration list.
Eigen::VectorXd project_prior(const PriorState& prior, std::span<const Determinant> configs);

}  // namespace qsci
