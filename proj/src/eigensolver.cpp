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

#include "qsci/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsci/error.hpp"

namespace qsci {

void SubspaceMatrix::add_rank_one(double beta, Eigen::VectorXd v) {
  if (v.size() != dim()) throw std::invalid_argument("rank-one term has the wrong length");
  rank_one_.emplace_back(beta, std::move(v));
}

Eigen::VectorXd SubspaceMatrix::diagonal() const {
  Eigen::VectorXd d = is_sparse_ ? Eigen::VectorXd(sparse_.diagonal()) : Eigen::VectorXd(dense_.diagonal());
  for (const auto& [beta, v] : rank_one_) d += beta * v.cwiseAbs2();
  return d;
}

Eigen::VectorXd SubspaceMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = is_sparse_ ? Eigen::VectorXd(sparse_ * x) : Eigen::VectorXd(dense_ * x);
  for (const auto& [beta, v] : rank_one_) y += beta * v.dot(x) * v;
  return y;
}

Eigen::MatrixXd SubspaceMatrix::multiply(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd y = is_sparse_ ? Eigen::MatrixXd(sparse_ * x) : Eigen::MatrixXd(dense_ * x);
  for (const auto& [beta, v] : rank_one_) y += beta * v * (v.transpose() * x);
  return y;
}

double SubspaceMatrix::coeff(Eigen::Index i, Eigen::Index j) const {
  double c = is_sparse_ ? sparse_.coeff(i, j) : dense_(i, j);
  for (const auto& [beta, v] : rank_one_) c += beta * v[i] * v[j];
  return c;
}

Eigen::MatrixXd SubspaceMatrix::to_dense() const {
  Eigen::MatrixXd m = is_sparse_ ? Eigen::MatrixXd(sparse_) : dense_;
  for (const auto& [beta, v] : rank_one_) m += beta * v * v.transpose();
  return m;
}

namespace {

EigenPairs dense_lowest(const Eigen::MatrixXd& m, int k) {
  // Shifting by the mean diagonal keeps large constant offsets (core
  // energies) out of the tridiagonal reduction.
  const double shift = m.diagonal().mean();
  Eigen::MatrixXd a = m;
  a.diagonal().array() -= shift;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  EigenPairs out;
  out.values = es.eigenvalues().head(k).array() + shift;
  out.vectors = es.eigenvectors().leftCols(k);
  return out;
}

// Block Davidson with diagonal preconditioning and thick restart.
EigenPairs davidson(const SubspaceMatrix& m, int k, const DavidsonSettings& s) {
  const Eigen::Index n = m.dim();
  const Eigen::VectorXd diag = m.diagonal();
  const Eigen::Index max_sub =
      std::min<Eigen::Index>(n, s.max_subspace > 0 ? s.max_subspace : std::max(8 * k, 40));

  // Start from unit vectors on the k smallest diagonal entries.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return diag[a] < diag[b]; });
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, k);
  for (int i = 0; i < k; ++i) V(order[i], i) = 1.0;
  Eigen::MatrixXd AV = m.multiply(V);

  EigenPairs out;
  for (int it = 1; it <= s.max_iterations; ++it) {
    const Eigen::MatrixXd T = V.transpose() * AV;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
    const Eigen::VectorXd theta = es.eigenvalues().head(k);
    const Eigen::MatrixXd Y = es.eigenvectors().leftCols(k);
    Eigen::MatrixXd X = V * Y;
    Eigen::MatrixXd R = AV * Y - X * theta.asDiagonal();

    std::vector<int> open;
    for (int i = 0; i < k; ++i)
      if (R.col(i).norm() > s.tolerance) open.push_back(i);
    if (open.empty() || V.cols() == n) {
      out.values = theta;
      out.vectors = X;
      out.iterations = it;  // a basis spanning the space makes the Ritz pairs exact
      return out;
    }

    // Restart keeps the current Ritz vectors.
    if (V.cols() + static_cast<Eigen::Index>(open.size()) > max_sub) {
      V = X;
      AV = AV * Y;
    }

    Eigen::MatrixXd add(n, open.size());
    for (std::size_t c = 0; c < open.size(); ++c) {
      const int i = open[c];
      Eigen::VectorXd t = R.col(i);
      for (Eigen::Index r = 0; r < n; ++r) {
        double denom = diag[r] - theta[i];
        if (std::abs(denom) < 1e-8) denom = denom < 0 ? -1e-8 : 1e-8;
        t[r] /= denom;
      }
      add.col(c) = t;
    }
    // Two passes of Gram-Schmidt against V and the accepted new vectors.
    Eigen::Index kept = 0;
    for (Eigen::Index c = 0; c < add.cols(); ++c) {
      Eigen::VectorXd t = add.col(c);
      for (int pass = 0; pass < 2; ++pass) {
        t -= V * (V.transpose() * t);
        if (kept > 0) t -= add.leftCols(kept) * (add.leftCols(kept).transpose() * t);
      }
      const double norm = t.norm();
      if (norm > 1e-10) add.col(kept++) = t / norm;
    }
    if (kept == 0) {
      // Preconditioned residuals fell inside span(V); use raw residuals.
      for (int i : open) {
        Eigen::VectorXd t = R.col(i);
        for (int pass = 0; pass < 2; ++pass) {
          t -= V * (V.transpose() * t);
          if (kept > 0) t -= add.leftCols(kept) * (add.leftCols(kept).transpose() * t);
        }
        const double norm = t.norm();
        if (norm > 1e-12) add.col(kept++) = t / norm;
      }
      if (kept == 0) throw NumericalError("Davidson stalled: no new search direction");
    }
    const Eigen::MatrixXd fresh = add.leftCols(kept);
    const Eigen::MatrixXd Afresh = m.multiply(fresh);
    const Eigen::Index old = V.cols();
    V.conservativeResize(n, old + kept);
    V.rightCols(kept) = fresh;
    AV.conservativeResize(n, old + kept);
    AV.rightCols(kept) = Afresh;
  }
  throw NumericalError("Davidson did not converge in " + std::to_string(s.max_iterations) +
                       " iterations");
}

}  // namespace

EigenPairs diagonalize_lowest(const SubspaceMatrix& m, int k, SolverPath path,
                              const DavidsonSettings& settings) {
  const Eigen::Index n = m.dim();
  if (k < 1 || k > n)
    throw std::invalid_argument("diagonalize_lowest: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(n) + "]");
  if (path == SolverPath::kAuto) path = n <= kDenseSolverThreshold ? SolverPath::kDense : SolverPath::kDavidson;
  if (path == SolverPath::kDense) return dense_lowest(m.to_dense(), k);
  return davidson(m, k, settings);
}

EigenPairs diagonalize_lowest(const Eigen::MatrixXd& m, int k, SolverPath path,
                              const DavidsonSettings& settings) {
  if (m.rows() != m.cols()) throw std::invalid_argument("diagonalize_lowest: matrix is not square");
  if (path == SolverPath::kDavidson) return diagonalize_lowest(SubspaceMatrix(m), k, path, settings);
  const Eigen::Index n = m.rows();
  if (k < 1 || k > n)
    throw std::invalid_argument("diagonalize_lowest: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(n) + "]");
  return dense_lowest(m, k);
}

}  // namespace qsci
