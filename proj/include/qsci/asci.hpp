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

#include <string>
#include <vector>

#include "qsci/integrals.hpp"
#include "qsci/qsci.hpp"

namespace qsci {

struct AsciConfig {
  std::size_t r = 0;       // target determinant count
  std::size_t r_core = 1;  // core-set size
  double delta = 1e-4;     // floor on the perturbative denominator, Ha
  int max_iterations = 20;
  double tolerance = 1e-8;  // stop on |dE| below this, Ha

  void validate() const;
};

struct AsciIteration {
  int iteration;
  std::size_t dimension;
  double energy;
};

struct AsciResult {
  SubspaceSolution solution;
  std::vector<AsciIteration> trace;  // entry 0 is the HF start
  bool converged = false;

  /// iteration,dimension,energy
  std::string trace_csv() const;
};

/// Adaptive-sampling CI from the HF determinant. Each iteration takes the
/// r_core largest |c| as the core, pools the core's connected determinants
/// with the current set, scores a candidate k by
///   |sum_{i in core, i != k} H_ki c_i| / max(|H_kk - E|, delta)
/// (current members score at least |c_k|), keeps the top r and
/// re-diagonalizes. A step that would raise the energy is rejected and
/// ends the run, so the trace never increases.
AsciResult asci_run(const MolecularIntegrals& mol, const Sector& sector, const AsciConfig& cfg);

}  // namespace qsci
