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

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qsci {

/// Dimension at and below which matrices are stored and solved densely.
inline constexpr Eigen::Index kDenseSolverThreshold = 2000;

/// Real symmetric matrix, dense or sparse, plus optional rank-one terms
/// sum_i beta_i v_i v_i^T (the sequential-scheme deflation).
class SubspaceMatrix {
 public:
  SubspaceMatrix() = default;
  explicit SubspaceMatrix(Eigen::MatrixXd dense) : dense_(std::move(dense)) {}
  explicit SubspaceMatrix(Eigen::SparseMatrix<double> sparse)
      : sparse_(std::move(sparse)), is_sparse_(true) {}

  Eigen::Index dim() const { return is_sparse_ ? sparse_.rows() : dense_.rows(); }
  bool is_sparse() const { return is_sparse_; }

  void add_rank_one(double beta, Eigen::VectorXd v);
  const std::vector<std::pair<double, Eigen::VectorXd>>& rank_one() const { return rank_one_; }

  Eigen::VectorXd diagonal() const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;
  double coeff(Eigen::Index i, Eigen::Index j) const;
  /// Materialized matrix including the rank-one terms.
  Eigen::MatrixXd to_dense() const;

 private:
  Eigen::MatrixXd dense_;
  Eigen::SparseMatrix<double> sparse_;
  bool is_sparse_ = false;
  std::vector<std::pair<double, Eigen::VectorXd>> rank_one_;
};

enum class SolverPath { kAuto, kDense, kDavidson };

struct DavidsonSettings {
  double tolerance = 1e-10;  // residual 2-norm per pair
  int max_iterations = 1000;
  int max_subspace = 0;      // 0: chosen from k
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
  int iterations = 0;       // Davidson iterations; 0 for the dense path
};

/// k lowest eigenpairs. kAuto picks dense up to kDenseSolverThreshold.
/// Throws std::invalid_argument for k outside [1, dim] and NumericalError
/// when Davidson does not converge.
EigenPairs diagonalize_lowest(const SubspaceMatrix& m, int k, SolverPath path = SolverPath::kAuto,
                              const DavidsonSettings& settings = {});
EigenPairs diagonalize_lowest(const Eigen::MatrixXd& m, int k, SolverPath path = SolverPath::kAuto,
                              const DavidsonSettings& settings = {});

}  // namespace qsci
