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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qsci/circuit.hpp"
#include "qsci/pauli.hpp"
#include "qsci/statevector.hpp"

namespace qsci {

/// weight * (O - target)^2
struct Penalty {
  QubitHamiltonian op;
  double target = 0.0;
  double weight = 0.0;
};

/// weight * |<state|psi>|^2
struct OverlapTerm {
  StateVector state;
  double weight = 0.0;
};

struct ObjectiveSpec {
  QubitHamiltonian hamiltonian;
  std::vector<Penalty> penalties;
  std::vector<OverlapTerm> overlaps;
};

/// Objective over circuit parameters. Penalties are folded into one Pauli
/// sum at construction, so an evaluation is one simulation plus one
/// expectation and the overlaps.
class Objective {
 public:
  Objective(ObjectiveSpec spec, Circuit circuit, Determinant initial);

  double operator()(std::span<const double> params) const;
  double value(const StateVector& s) const;
  StateVector state(std::span<const double> params) const;
  /// Bare <H>, no penalties or overlaps.
  double energy(std::span<const double> params) const;

  const Circuit& circuit() const { return circuit_; }
  const Determinant& initial() const { return initial_; }
  const ObjectiveSpec& spec() const { return spec_; }
  const QubitHamiltonian& effective_hamiltonian() const { return effective_; }

 private:
  ObjectiveSpec spec_;
  Circuit circuit_;
  Determinant initial_;
  QubitHamiltonian effective_;
};

struct TraceEntry {
  std::vector<double> params;
  double value;
};

struct OptimizationTrace {
  std::vector<TraceEntry> entries;
  bool converged = false;
  std::size_t evaluations = 0;

  const TraceEntry& final() const { return entries.back(); }
  /// iteration,value,param_0,...  one row per accepted iterate
  std::string to_csv() const;
};

struct BfgsSettings {
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;  // infinity norm
  double fd_step = 1e-6;             // central differences
  double value_tolerance = 1e-12;    // stop when an accepted step gains less
};

using ScalarFunction = std::function<double(std::span<const double>)>;

/// Quasi-Newton descent (BFGS inverse-Hessian update, backtracking Armijo
/// line search) with central finite-difference gradients.
OptimizationTrace minimize(const ScalarFunction& f, std::vector<double> x0,
                           const BfgsSettings& settings = {});

/// Seeded uniform draws in [-0.1, 0.1].
std::vector<double> initial_parameters(int n, std::uint64_t seed);

struct VariationalState {
  std::vector<double> params;
  StateVector state;
  double energy;  // bare <H>
  OptimizationTrace trace;
};

/// State k minimizes H + penalties + sum_{j<k} weight |<psi_j|psi>|^2.
/// The initial parameters of state k use stream (seed, k).
std::vector<VariationalState> prepare_vqd_chain(const ObjectiveSpec& base, const Circuit& circuit,
                                                const Determinant& initial, int n_states,
                                                double overlap_weight,
                                                const BfgsSettings& settings, std::uint64_t seed);

}  // namespace qsci
