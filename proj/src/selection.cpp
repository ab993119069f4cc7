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

#include "qsci/selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace qsci {

SelectionResult SelectionResult::truncated(std::size_t r) const {
  SelectionResult out = *this;
  if (out.configs.size() > r) {
    out.configs.resize(r);
    out.frequencies.resize(r);
  }
  out.requested = r;
  return out;
}

nlohmann::json SelectionResult::to_json() const {
  nlohmann::json configs_json = nlohmann::json::array();
  for (std::size_t i = 0; i < configs.size(); ++i)
    configs_json.push_back({{"config", configs[i].to_string()}, {"frequency", frequencies[i]}});
  return {{"configs", configs_json},
          {"discarded_by_postselect", discarded_by_postselect},
          {"requested", requested},
          {"shortfall", shortfall()}};
}

namespace {

struct Candidate {
  std::uint64_t bits;
  double weight;
};

// Descending weight, then ascending bitstring.
bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.bits < b.bits;
}

bool passes(std::uint64_t bits, int n_qubits, const SectorFilter& filter) {
  return !filter || in_sector(Determinant(bits, n_qubits), *filter);
}

SelectionResult finish(std::vector<Candidate> cand, std::size_t r, int n_qubits,
                       std::uint64_t discarded, std::size_t requested) {
  const std::size_t keep = std::min(r, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + keep, cand.end(), ranks_before);
  SelectionResult out;
  out.discarded_by_postselect = discarded;
  out.requested = requested;
  out.configs.reserve(keep);
  out.frequencies.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.configs.emplace_back(cand[i].bits, n_qubits);
    out.frequencies.push_back(cand[i].weight);
  }
  return out;
}

std::vector<Candidate> filtered(const SampleCounts& counts, const SectorFilter& filter,
                                std::uint64_t& discarded) {
  std::vector<Candidate> cand;
  discarded = 0;
  for (const auto& [bits, n] : counts.counts) {
    if (n == 0) continue;
    if (passes(bits, counts.n_qubits, filter)) cand.push_back({bits, static_cast<double>(n)});
    else discarded += n;
  }
  return cand;
}

}  // namespace

SelectionResult select_top_r(const SampleCounts& counts, std::size_t r, const SectorFilter& filter) {
  if (r < 1) throw std::invalid_argument("select_top_r: r must be at least 1");
  std::uint64_t discarded;
  auto cand = filtered(counts, filter, discarded);
  return finish(std::move(cand), r, counts.n_qubits, discarded, r);
}

SelectionResult select_by_threshold(const SampleCounts& counts, double epsilon,
                                    const SectorFilter& filter) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("select_by_threshold: epsilon must lie in (0, 1]");
  std::uint64_t discarded;
  auto cand = filtered(counts, filter, discarded);
  const double total = static_cast<double>(counts.total_shots);
  std::erase_if(cand, [&](const Candidate& c) { return c.weight / total < epsilon; });
  const std::size_t n = cand.size();
  return finish(std::move(cand), n, counts.n_qubits, discarded, 0);
}

SelectionResult select_all(const SampleCounts& counts, const SectorFilter& filter) {
  std::uint64_t discarded;
  auto cand = filtered(counts, filter, discarded);
  const std::size_t n = cand.size();
  return finish(std::move(cand), n, counts.n_qubits, discarded, 0);
}

SelectionResult idealized_top_r(const StateVector& state, std::size_t r,
                                const SectorFilter& filter, double nominal_total) {
  if (r < 1) throw std::invalid_argument("idealized_top_r: r must be at least 1");
  std::vector<Candidate> cand;
  std::uint64_t discarded = 0;
  const auto amps = state.amplitudes();
  for (std::uint64_t x = 0; x < amps.size(); ++x) {
    const double p = std::norm(amps[x]);
    if (p == 0.0) continue;
    if (passes(x, state.n_qubits(), filter)) cand.push_back({x, p * nominal_total});
    else ++discarded;
  }
  return finish(std::move(cand), r, state.n_qubits(), discarded, r);
}

SelectionResult merge_subspaces(std::span<const SelectionResult> selections, std::size_t r,
                                MergeStrategy strategy) {
  SelectionResult out;
  out.requested = r;
  std::unordered_set<Determinant, DeterminantHash> seen;
  auto take = [&](const SelectionResult& s, std::size_t i) {
    if (seen.insert(s.configs[i]).second) {
      out.configs.push_back(s.configs[i]);
      out.frequencies.push_back(s.frequencies[i]);
    }
  };
  for (const auto& s : selections) out.discarded_by_postselect += s.discarded_by_postselect;

  if (strategy == MergeStrategy::kConcatenate) {
    for (const auto& s : selections)
      for (std::size_t i = 0; i < s.size() && out.size() < r; ++i) take(s, i);
  } else {
    // Each turn, a state contributes its next config not already present.
    std::vector<std::size_t> cursor(selections.size(), 0);
    bool progress = true;
    while (out.size() < r && progress) {
      progress = false;
      for (std::size_t k = 0; k < selections.size() && out.size() < r; ++k) {
        const auto& s = selections[k];
        while (cursor[k] < s.size() && seen.count(s.configs[cursor[k]])) ++cursor[k];
        if (cursor[k] < s.size()) {
          take(s, cursor[k]++);
          progress = true;
        }
      }
    }
  }
  if (out.configs.empty()) throw std::invalid_argument("merge_subspaces: union of selections is empty");
  return out;
}

}  // namespace qsci
