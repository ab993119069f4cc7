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

#include "qsci/asci.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qsci {

void AsciConfig::validate() const {
  if (r_core < 1) throw std::invalid_argument("asci: r_core must be at least 1");
  if (r < r_core) throw std::invalid_argument("asci: r must be at least r_core");
  if (!(delta > 0.0)) throw std::invalid_argument("asci: delta must be positive");
  if (max_iterations < 0) throw std::invalid_argument("asci: max_iterations must be non-negative");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("asci: tolerance must be non-negative");
}

std::string AsciResult::trace_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,dimension,energy\n";
  for (const auto& t : trace) out << t.iteration << ',' << t.dimension << ',' << t.energy << '\n';
  return out.str();
}

namespace {

struct Scored {
  Determinant det;
  double score;
};

}  // namespace

AsciResult asci_run(const MolecularIntegrals& mol, const Sector& sector, const AsciConfig& cfg) {
  cfg.validate();
  if (sector_determinants(mol.n_orbitals, sector).empty())
    throw std::invalid_argument("asci: the requested sector is empty");
  const Determinant hf = hartree_fock_determinant(mol.n_orbitals, sector);

  AsciResult result;
  std::vector<Determinant> current{hf};
  result.solution = solve_subspace(current, mol, 1);
  result.trace.push_back({0, 1, result.solution.eigenvalues[0]});

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const auto& sol = result.solution;
    const double e = sol.eigenvalues[0];
    const Eigen::VectorXd c = sol.vectors.col(0);

    // Core: largest |c|, ties by ascending bitstring.
    std::vector<std::size_t> order(sol.configs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (std::abs(c[a]) != std::abs(c[b])) return std::abs(c[a]) > std::abs(c[b]);
      return sol.configs[a] < sol.configs[b];
    });
    const std::size_t n_core = std::min(cfg.r_core, order.size());

    std::unordered_map<std::uint64_t, double> current_amp;
    for (std::size_t i = 0; i < sol.configs.size(); ++i) current_amp[sol.configs[i].bits()] = c[i];

    // Numerators sum_{i in core} H_ki c_i over the pooled candidates.
    std::unordered_map<std::uint64_t, double> numerator;
    for (const auto& d : sol.configs) numerator.emplace(d.bits(), 0.0);
    for (std::size_t k = 0; k < n_core; ++k) {
      const std::size_t i = order[k];
      const Determinant& core = sol.configs[i];
      for (const auto& d : connected_determinants(core, true)) {
        if (!in_sector(d, sector)) continue;
        numerator[d.bits()] += slater_condon(d, core, mol) * c[i];
      }
    }

    std::vector<Scored> pool;
    pool.reserve(numerator.size());
    for (const auto& [bits, num] : numerator) {
      const Determinant d(bits, mol.n_qubits());
      const double denom = std::max(std::abs(slater_condon(d, d, mol) - e), cfg.delta);
      double score = std::abs(num) / denom;
      if (auto it2 = current_amp.find(bits); it2 != current_amp.end())
        score = std::max(score, std::abs(it2->second));
      pool.push_back({d, score});
    }
    const std::size_t keep = std::min(cfg.r, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + keep, pool.end(), [](const Scored& a, const Scored& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.det < b.det;
    });
    std::vector<Determinant> next;
    for (std::size_t k = 0; k < keep; ++k) next.push_back(pool[k].det);
    std::sort(next.begin(), next.end());

    SubspaceSolution trial = solve_subspace(next, mol, 1);
    const double e_new = trial.eigenvalues[0];
    if (e_new > e + 1e-12) {
      // Rejected step: keep the previous set and stop.
      result.converged = false;
      break;
    }
    result.solution = std::move(trial);
    result.trace.push_back({it, next.size(), e_new});
    if (std::abs(e - e_new) < cfg.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace qsci
