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

#include "qsci/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qsci/error.hpp"
#include "qsci/kernels.hpp"

namespace qsci {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("state vector: unsupported qubit count");
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(const Determinant& d) {
  StateVector s(d.n_qubits());
  s.amps_[0] = 0.0;
  s.amps_[d.bits()] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<cplx> amplitudes) {
  if (n_qubits < 0 || n_qubits > 30 || amplitudes.size() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("state vector: amplitude count is not 2^n_qubits");
  StateVector s;
  s.n_qubits_ = n_qubits;
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize a zero state");
  for (auto& a : amps_) a /= n;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("inner product: dimension mismatch");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) sum += std::conj(amps_[i]) * other.amps_[i];
  return sum;
}

double expectation(const StateVector& s, const QubitHamiltonian& h) {
  if (h.n_qubits() != s.n_qubits())
    throw std::invalid_argument("expectation: Hamiltonian acts on " + std::to_string(h.n_qubits()) +
                                " qubits, state has " + std::to_string(s.n_qubits()));
  const cplx v = kernels::pauli_expectation(s.amplitudes(), h);
  if (std::abs(v.imag()) > 1e-8)
    throw NumericalError("expectation has imaginary part " + std::to_string(v.imag()) +
                         "; operator is not Hermitian");
  return v.real();
}

}  // namespace qsci
