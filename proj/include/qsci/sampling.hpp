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

#include <cstdint>
#include <map>
#include <span>

#include "json.hpp"
#include "qsci/circuit.hpp"
#include "qsci/statevector.hpp"

namespace qsci {

/// Outcome histogram; keys are determinant bit patterns.
struct SampleCounts {
  int n_qubits = 0;
  std::uint64_t total_shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  void add(std::uint64_t outcome, std::uint64_t n = 1);
  /// {bitstring: count}
  nlohmann::json to_json() const;
  static SampleCounts from_json(const nlohmann::json& j);
};

/// Depolarizing and readout noise. Each depolarizing event applies X, Y or
/// Z with probability p/3 each. A two-qubit gate with infidelity p2 hits
/// each of its qubits at rate 1 - sqrt(1 - p2).
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  double p_ro = 0.0;

  static NoiseModel from_fidelities(double f1, double f2, double f_ro);
  double p2_per_qubit() const;
  bool is_noiseless() const { return p1 == 0.0 && p2 == 0.0 && p_ro == 0.0; }
  void validate() const;
  nlohmann::json to_json() const;
};

/// i.i.d. draws from |alpha_x|^2; shot k uses its own stream so the
/// counts depend only on (state, n_shots, seed).
SampleCounts sample(const StateVector& s, std::uint64_t n_shots, std::uint64_t seed);

/// Monte-Carlo trajectories: one Pauli-error realisation per shot, then a
/// draw from that trajectory's state, then readout flips. With all rates
/// zero this reproduces sample(simulate(...)) exactly.
SampleCounts noisy_sample(const Circuit& c, std::span<const double> params,
                          const Determinant& initial, const NoiseModel& noise,
                          std::uint64_t n_shots, std::uint64_t seed);

}  // namespace qsci
