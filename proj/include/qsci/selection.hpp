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
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "qsci/determinant.hpp"
#include "qsci/sampling.hpp"
#include "qsci/statevector.hpp"

namespace qsci {

/// Post-selection target. Empty means keep every outcome.
using SectorFilter = std::optional<Sector>;

/// Configurations ranked by frequency, ties broken by ascending bitstring.
struct SelectionResult {
  std::vector<Determinant> configs;
  std::vector<double> frequencies;
  std::uint64_t discarded_by_postselect = 0;
  std::size_t requested = 0;  // r asked for; 0 when no cap applied

  std::size_t size() const { return configs.size(); }
  std::size_t shortfall() const {
    return requested > configs.size() ? requested - configs.size() : 0;
  }
  /// Keeps the first r entries.
  SelectionResult truncated(std::size_t r) const;
  nlohmann::json to_json() const;
};

SelectionResult select_top_r(const SampleCounts& counts, std::size_t r,
                             const SectorFilter& filter = {});

/// Keeps x with count_x / total >= epsilon.
SelectionResult select_by_threshold(const SampleCounts& counts, double epsilon,
                                    const SectorFilter& filter = {});

/// Every observed configuration that survives the filter.
SelectionResult select_all(const SampleCounts& counts, const SectorFilter& filter = {});

/// Top r by |alpha_x|. Frequencies are |alpha_x|^2 * nominal_total.
SelectionResult idealized_top_r(const StateVector& state, std::size_t r,
                                const SectorFilter& filter = {}, double nominal_total = 1.0);

enum class MergeStrategy {
  kRoundRobin,   // cycle the states, each adding its next unseen config
  kConcatenate,  // all of state 0, then state 1, ...
};

/// Union of per-state selections truncated to r distinct configurations.
/// Ranks are only compared within a selection, never across states.
SelectionResult merge_subspaces(std::span<const SelectionResult> selections, std::size_t r,
                                MergeStrategy strategy);

}  // namespace qsci
