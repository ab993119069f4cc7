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
#include <string>
#include <string_view>
#include <vector>

#include "qsci/determinant.hpp"
#include "qsci/statevector.hpp"

namespace qsci {

enum class GateKind { RX, RY, RZ, H, X, SDG, CNOT, CZ, GIVENS };

/// One gate. Rotations take their angle from params[slot] when slot >= 0,
/// otherwise from the fixed angle. For CNOT q0 is the control. GIVENS(θ)
/// rotates within span{|q0=1,q1=0>, |q0=0,q1=1>}:
///   |q0> -> cos(θ/2)|q0> + sin(θ/2)|q1>,  |q1> -> -sin(θ/2)|q0> + cos(θ/2)|q1>
/// and leaves |00>, |11> alone, so it conserves the number of set bits.
struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;
  int slot = -1;
  double angle = 0.0;

  bool two_qubit() const { return q1 >= 0; }
  bool parametrized() const { return slot >= 0; }
};

const char* gate_name(GateKind k);
bool gate_is_two_qubit(GateKind k);
bool gate_takes_angle(GateKind k);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const noexcept { return n_qubits_; }
  int n_params() const noexcept { return n_params_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Appends a gate; a parametrized gate gets the next free slot.
  void add(GateKind kind, int q0, int q1 = -1);
  void add_fixed(GateKind kind, int q0, int q1, double angle);
  void add_parametrized(GateKind kind, int q0, int q1 = -1);

  /// "KIND q0 [q1] [p<slot> | <angle>]" per line; '#' starts a comment.
  std::string to_text() const;
  static Circuit from_text(std::string_view text, int n_qubits);

 private:
  void validate(const Gate& g) const;

  int n_qubits_ = 0;
  int n_params_ = 0;
  std::vector<Gate> gates_;
};

void apply_gate(StateVector& s, const Gate& g, std::span<const double> params);

StateVector simulate(const Circuit& c, std::span<const double> params,
                     const Determinant& initial);

/// Initial RY layer, then depth x (CZ ladder on (q, q+1), RY layer);
/// n (depth + 1) parameters.
Circuit ry_ansatz(int n_qubits, int depth);

/// Real, particle-number and S_z conserving ansatz on the interleaved
/// layout. Layer l applies GIVENS blocks to same-spin neighbours
/// (2p, 2p+2) and (2p+1, 2p+3) for p = l mod 2, l mod 2 + 2, ..., then a
/// CZ on every (2p, 2p+1) so the alpha and beta registers correlate.
Circuit rsp_ansatz(int n_qubits, int depth);

}  // namespace qsci
