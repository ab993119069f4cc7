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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsci/determinant.hpp"
#include "qsci/pauli.hpp"

namespace qsci {

/// Dense amplitude vector over 2^n computational basis states; index bit q
/// is qubit q, matching Determinant::bits().
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits);  // |0...0>
  static StateVector basis(const Determinant& d);
  static StateVector from_amplitudes(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  cplx operator[](std::uint64_t i) const { return amps_[i]; }
  cplx& operator[](std::uint64_t i) { return amps_[i]; }

  double norm() const;
  void normalize();
  std::vector<double> probabilities() const;
  /// <this|other>
  cplx inner(const StateVector& other) const;

 private:
  int n_qubits_ = 0;
  std::vector<cplx> amps_;
};

/// <s|H|s>. Throws NumericalError if the imaginary residue exceeds 1e-8.
double expectation(const StateVector& s, const QubitHamiltonian& h);

}  // namespace qsci
