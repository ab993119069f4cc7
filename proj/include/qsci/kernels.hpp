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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qsci/determinant.hpp"
#include "qsci/integrals.hpp"
#include "qsci/pauli.hpp"

// Hot loops. Each OpenMP kernel has a serial twin with identical arithmetic
// order per output element; tests compare the two and bench/ times them.
namespace qsci::kernels {

using Mat2 = std::array<cplx, 4>;   // row-major
using Mat4 = std::array<cplx, 16>;  // row-major, local index b(q0) + 2 b(q1)

void apply_1q_serial(std::span<cplx> amps, int q, const Mat2& m);
void apply_1q(std::span<cplx> amps, int q, const Mat2& m);

void apply_2q_serial(std::span<cplx> amps, int q0, int q1, const Mat4& m);
void apply_2q(std::span<cplx> amps, int q0, int q1, const Mat4& m);

// Permutation / diagonal fast paths.
void apply_x(std::span<cplx> amps, int q);
void apply_y(std::span<cplx> amps, int q);
void apply_z(std::span<cplx> amps, int q);
void apply_cnot(std::span<cplx> amps, int control, int target);
void apply_cz(std::span<cplx> amps, int q0, int q1);

cplx pauli_expectation_serial(std::span<const cplx> amps, const QubitHamiltonian& h);
cplx pauli_expectation(std::span<const cplx> amps, const QubitHamiltonian& h);

/// Dense <x|H|y> over a configuration list. Pairs with different particle
/// numbers are zero (H conserves N), so mixed lists give the Fock-space
/// block matrix.
Eigen::MatrixXd subspace_matrix_serial(std::span<const Determinant> basis,
                                       const MolecularIntegrals& mol);
Eigen::MatrixXd subspace_matrix(std::span<const Determinant> basis,
                                const MolecularIntegrals& mol);

/// One outcome per shot, drawn by inverse-CDF lookup with the per-shot
/// outcome stream (seed, shot, kOutcome).
std::vector<std::uint64_t> sample_outcomes_serial(std::span<const double> cdf,
                                                  std::uint64_t n_shots,
                                                  std::uint64_t seed);
std::vector<std::uint64_t> sample_outcomes(std::span<const double> cdf,
                                           std::uint64_t n_shots, std::uint64_t seed);

/// Index of the outcome selected by uniform u in [0, 1).
std::uint64_t draw_from_cdf(std::span<const double> cdf, double u);

}  // namespace qsci::kernels
