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

#include "qsci/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsci/circuit.hpp"
#include "qsci/error.hpp"
#include "qsci/kernels.hpp"
#include "qsci/rng.hpp"

namespace qsci {

namespace {

bool compatible(const PauliString& basis, const PauliString& p) {
  const std::uint64_t both = basis.support() & p.support();
  return ((basis.x() ^ p.x()) & both) == 0 && ((basis.z() ^ p.z()) & both) == 0;
}

}  // namespace

std::vector<MeasurementGroup> qwc_groups(const QubitHamiltonian& h) {
  const auto& terms = h.terms();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (!terms[i].string.is_identity()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(terms[a].coefficient) > std::abs(terms[b].coefficient);
  });
  std::vector<MeasurementGroup> groups;
  for (std::size_t i : order) {
    const auto& p = terms[i].string;
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const MeasurementGroup& g) { return compatible(g.basis, p); });
    if (it == groups.end()) {
      groups.push_back({{i}, p});
    } else {
      it->members.push_back(i);
      it->basis = PauliString(it->basis.x() | p.x(), it->basis.z() | p.z(), p.n_qubits());
    }
  }
  return groups;
}

nlohmann::json groups_to_json(const QubitHamiltonian& h, std::span<const MeasurementGroup> groups) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : groups) {
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t i : g.members)
      members.push_back({{"string", h.terms()[i].string.to_string()},
                         {"coefficient", h.terms()[i].coefficient.real()}});
    out.push_back({{"basis", g.basis.to_string()}, {"members", members}});
  }
  return out;
}

std::vector<double> haar_sigmas(const QubitHamiltonian& h, std::span<const MeasurementGroup> groups) {
  std::vector<double> out;
  for (const auto& g : groups) {
    double s2 = 0.0;
    for (std::size_t i : g.members) s2 += std::norm(h.terms()[i].coefficient);
    out.push_back(std::sqrt(s2));
  }
  return out;
}

namespace {

// Probabilities of the state measured in the group's basis.
std::vector<double> rotated_probabilities(const StateVector& state, const PauliString& basis) {
  StateVector s = state;
  for (int q = 0; q < basis.n_qubits(); ++q) {
    const char l = basis.letter(q);
    if (l == 'Y') apply_gate(s, {GateKind::SDG, q}, {});
    if (l == 'X' || l == 'Y') apply_gate(s, {GateKind::H, q}, {});
  }
  return s.probabilities();
}

// Group eigenvalue on measured bits b: sum_j c_j (-1)^{|b & supp_j|}.
double group_value(const QubitHamiltonian& h, const MeasurementGroup& g, std::uint64_t b) {
  double v = 0.0;
  for (std::size_t i : g.members) {
    const auto& t = h.terms()[i];
    v += (std::popcount(b & t.string.support()) & 1) ? -t.coefficient.real() : t.coefficient.real();
  }
  return v;
}

void require_real(const QubitHamiltonian& h) {
  if (h.max_imaginary() > 1e-12)
    throw std::invalid_argument("sampling estimation needs real Pauli coefficients");
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments exact_moments(const StateVector& state, const QubitHamiltonian& h, const MeasurementGroup& g) {
  const auto p = rotated_probabilities(state, g.basis);
  double m1 = 0.0, m2 = 0.0;
  for (std::uint64_t b = 0; b < p.size(); ++b) {
    if (p[b] == 0.0) continue;
    const double v = group_value(h, g, b);
    m1 += p[b] * v;
    m2 += p[b] * v * v;
  }
  return {m1, std::max(0.0, m2 - m1 * m1)};
}

struct Tally {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
};

void draw(const StateVector& state, const QubitHamiltonian& h, const MeasurementGroup& g,
          std::uint64_t shots, std::uint64_t seed, Tally& t) {
  if (shots == 0) return;
  auto cdf = rotated_probabilities(state, g.basis);
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  for (auto b : kernels::sample_outcomes(cdf, shots, seed)) {
    const double v = group_value(h, g, b);
    t.n += 1;
    t.sum += v;
    t.sum_sq += v * v;
  }
}

SamplingEstimate combine(const StateVector& state, const QubitHamiltonian& h,
                         std::span<const MeasurementGroup> groups, const std::vector<Tally>& tallies) {
  SamplingEstimate est;
  est.value = h.identity_coefficient().real();
  double var = 0.0;
  for (std::size_t l = 0; l < groups.size(); ++l) {
    const Tally& t = tallies[l];
    if (t.n == 0) {
      // Only a zero-variance group may go unmeasured; its value is then fixed.
      const Moments m = exact_moments(state, h, groups[l]);
      if (m.variance > 1e-12)
        throw std::invalid_argument("group " + std::to_string(l) + " has nonzero variance but no shots");
      est.value += m.mean;
      continue;
    }
    const double mean = t.sum / t.n;
    const double sample_var =
        t.n > 1 ? std::max(0.0, (t.sum_sq - t.n * mean * mean) / static_cast<double>(t.n - 1)) : 0.0;
    est.value += mean;
    var += sample_var / t.n;
    est.shots += t.n;
  }
  est.standard_error = std::sqrt(var);
  return est;
}

}  // namespace

std::vector<double> exact_sigmas(const StateVector& state, const QubitHamiltonian& h,
                                 std::span<const MeasurementGroup> groups) {
  require_real(h);
  std::vector<double> out;
  for (const auto& g : groups) out.push_back(std::sqrt(exact_moments(state, h, g).variance));
  return out;
}

nlohmann::json ShotAllocation::to_json() const { return {{"total", total}, {"shots", shots}}; }

ShotAllocation allocate_single(std::span<const double> sigmas, std::uint64_t total) {
  double sum = 0.0;
  std::size_t positive = 0;
  for (double s : sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("allocation: sigmas must be finite and non-negative");
    sum += s;
    positive += s > 0.0;
  }
  if (sum == 0.0) throw std::invalid_argument("allocation: every variance is zero");
  if (total < positive)
    throw std::invalid_argument("allocation: total shots " + std::to_string(total) + " below the " +
                                std::to_string(positive) + " groups with nonzero variance");
  ShotAllocation out;
  out.total = total;
  out.shots.resize(sigmas.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::uint64_t assigned = 0;
  for (std::size_t l = 0; l < sigmas.size(); ++l) {
    const double quota = static_cast<double>(total) * sigmas[l] / sum;
    const double fl = std::floor(quota);
    out.shots[l] = static_cast<std::uint64_t>(fl);
    assigned += out.shots[l];
    remainders.emplace_back(quota - fl, l);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out.shots[remainders[k % remainders.size()].second];
  return out;
}

ShotAllocation allocate_multi(const Eigen::MatrixXd& sigmas, std::uint64_t total) {
  std::vector<double> norms(sigmas.cols());
  for (Eigen::Index l = 0; l < sigmas.cols(); ++l) norms[l] = sigmas.col(l).norm();
  return allocate_single(norms, total);
}

SamplingEstimate estimate_sampling(const StateVector& state, const QubitHamiltonian& h,
                                   std::span<const MeasurementGroup> groups,
                                   const ShotAllocation& allocation, std::uint64_t seed) {
  require_real(h);
  if (allocation.shots.size() != groups.size())
    throw std::invalid_argument("allocation covers " + std::to_string(allocation.shots.size()) +
                                " groups, expected " + std::to_string(groups.size()));
  std::vector<Tally> tallies(groups.size());
  const std::int64_t ng = static_cast<std::int64_t>(groups.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t l = 0; l < ng; ++l)
    draw(state, h, groups[l], allocation.shots[l], stream_seed(seed, l, 4), tallies[l]);
  return combine(state, h, groups, tallies);
}

SamplingEstimate estimate_two_round(const StateVector& state, const QubitHamiltonian& h,
                                    std::span<const MeasurementGroup> groups, std::uint64_t total,
                                    double first_fraction, std::uint64_t seed) {
  require_real(h);
  if (!(first_fraction > 0.0 && first_fraction < 1.0))
    throw std::invalid_argument("two-round estimation: first_fraction must lie in (0, 1)");
  const auto first_total = static_cast<std::uint64_t>(std::llround(first_fraction * total));
  const ShotAllocation first = allocate_single(haar_sigmas(h, groups), first_total);
  std::vector<Tally> tallies(groups.size());
  for (std::size_t l = 0; l < groups.size(); ++l)
    draw(state, h, groups[l], first.shots[l], stream_seed(seed, l, 4), tallies[l]);

  std::vector<double> sigma(groups.size());
  for (std::size_t l = 0; l < groups.size(); ++l) {
    const Tally& t = tallies[l];
    if (t.n > 1) {
      const double mean = t.sum / t.n;
      sigma[l] = std::sqrt(std::max(0.0, (t.sum_sq - t.n * mean * mean) / (t.n - 1)));
    }
  }
  // Groups unseen in round one keep their Haar weight.
  const auto haar = haar_sigmas(h, groups);
  for (std::size_t l = 0; l < groups.size(); ++l)
    if (tallies[l].n <= 1) sigma[l] = haar[l];
  if (std::accumulate(sigma.begin(), sigma.end(), 0.0) > 0.0 && total > first_total) {
    const ShotAllocation second = allocate_single(sigma, total - first_total);
    for (std::size_t l = 0; l < groups.size(); ++l)
      draw(state, h, groups[l], second.shots[l], stream_seed(seed, l, 5), tallies[l]);
  }
  return combine(state, h, groups, tallies);
}

}  // namespace qsci
