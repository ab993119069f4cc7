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

#include "qsci/sampling.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsci/error.hpp"
#include "qsci/kernels.hpp"
#include "qsci/rng.hpp"

namespace qsci {

void SampleCounts::add(std::uint64_t outcome, std::uint64_t n) {
  counts[outcome] += n;
  total_shots += n;
}

nlohmann::json SampleCounts::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [bits, n] : counts) j[Determinant(bits, n_qubits).to_string()] = n;
  return j;
}

SampleCounts SampleCounts::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("sample counts must be a JSON object");
  SampleCounts c;
  c.n_qubits = -1;
  for (const auto& [key, value] : j.items()) {
    const auto d = Determinant::from_string(key);
    if (c.n_qubits >= 0 && d.n_qubits() != c.n_qubits)
      throw std::invalid_argument("sample counts: bitstrings of different lengths");
    c.n_qubits = d.n_qubits();
    if (!value.is_number_unsigned()) throw std::invalid_argument("sample counts: count for '" + key + "' is not a non-negative integer");
    c.add(d.bits(), value.get<std::uint64_t>());
  }
  if (c.n_qubits < 0) c.n_qubits = 0;
  return c;
}

NoiseModel NoiseModel::from_fidelities(double f1, double f2, double f_ro) {
  NoiseModel m{1.0 - f1, 1.0 - f2, 1.0 - f_ro};
  m.validate();
  return m;
}

double NoiseModel::p2_per_qubit() const { return 1.0 - std::sqrt(1.0 - p2); }

void NoiseModel::validate() const {
  auto check = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument(std::string("noise rate ") + name + " must lie in [0, 1]");
  };
  check(p1, "p1");
  check(p2, "p2");
  check(p_ro, "p_ro");
}

nlohmann::json NoiseModel::to_json() const { return {{"p1", p1}, {"p2", p2}, {"p_ro", p_ro}}; }

namespace {

std::vector<double> cdf_of(const StateVector& s) {
  std::vector<double> cdf = s.probabilities();
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  if (!(cdf.back() > 0.0)) throw NumericalError("cannot sample from a zero state");
  return cdf;
}

}  // namespace

SampleCounts sample(const StateVector& s, std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots < 1) throw std::invalid_argument("sample: n_shots must be at least 1");
  const auto cdf = cdf_of(s);
  SampleCounts out;
  out.n_qubits = s.n_qubits();
  for (auto x : kernels::sample_outcomes(cdf, n_shots, seed)) out.add(x);
  return out;
}

namespace {

struct PauliEvent {
  std::size_t gate;  // error follows this gate
  int qubit;
  int letter;        // 0 X, 1 Y, 2 Z
};

void draw_depolarizing(Stream& rng, double p, std::size_t gate, int qubit,
                       std::vector<PauliEvent>& events) {
  if (p <= 0.0) return;
  const double u = rng.uniform();
  if (u < p) events.push_back({gate, qubit, std::min(2, static_cast<int>(3.0 * u / p))});
}

void apply_pauli(StateVector& s, int qubit, int letter) {
  auto a = s.amplitudes();
  if (letter == 0) kernels::apply_x(a, qubit);
  else if (letter == 1) kernels::apply_y(a, qubit);
  else kernels::apply_z(a, qubit);
}

}  // namespace

SampleCounts noisy_sample(const Circuit& c, std::span<const double> params,
                          const Determinant& initial, const NoiseModel& noise,
                          std::uint64_t n_shots, std::uint64_t seed) {
  noise.validate();
  if (n_shots < 1) throw std::invalid_argument("noisy_sample: n_shots must be at least 1");
  const auto& gates = c.gates();
  const int nq = c.n_qubits();
  const double p2q = noise.p2_per_qubit();

  // Noiseless prefix states, so a trajectory restarts from its first error.
  StateVector state = StateVector::basis(initial);
  if (static_cast<int>(params.size()) != c.n_params())
    throw std::invalid_argument("noisy_sample: parameter count mismatch");
  const bool cache = state.dim() * (gates.size() + 1) <= (std::size_t{1} << 24);
  std::vector<StateVector> prefix;
  if (cache) prefix.push_back(state);
  for (const auto& g : gates) {
    apply_gate(state, g, params);
    if (cache) prefix.push_back(state);
  }
  const auto clean_cdf = cdf_of(state);

  std::vector<std::uint64_t> outcomes(n_shots);
  const std::int64_t shots = static_cast<std::int64_t>(n_shots);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    Stream noise_rng(seed, shot, kNoise);
    std::vector<PauliEvent> events;
    if (noise.p1 > 0.0 || p2q > 0.0)
      for (std::size_t k = 0; k < gates.size(); ++k) {
        const auto& g = gates[k];
        if (g.two_qubit()) {
          draw_depolarizing(noise_rng, p2q, k, g.q0, events);
          draw_depolarizing(noise_rng, p2q, k, g.q1, events);
        } else {
          draw_depolarizing(noise_rng, noise.p1, k, g.q0, events);
        }
      }

    Stream outcome_rng(seed, shot, kOutcome);
    std::uint64_t x;
    if (events.empty()) {
      x = kernels::draw_from_cdf(clean_cdf, outcome_rng.uniform());
    } else {
      const std::size_t first = events.front().gate;
      StateVector traj;
      if (cache) {
        traj = prefix[first + 1];
      } else {
        traj = StateVector::basis(initial);
        for (std::size_t k = 0; k <= first; ++k) apply_gate(traj, gates[k], params);
      }
      std::size_t e = 0;
      for (std::size_t k = first; k < gates.size(); ++k) {
        if (k > first) apply_gate(traj, gates[k], params);
        for (; e < events.size() && events[e].gate == k; ++e)
          apply_pauli(traj, events[e].qubit, events[e].letter);
      }
      x = kernels::draw_from_cdf(cdf_of(traj), outcome_rng.uniform());
    }

    if (noise.p_ro > 0.0) {
      Stream ro(seed, shot, kReadout);
      for (int q = 0; q < nq; ++q)
        if (ro.uniform() < noise.p_ro) x ^= std::uint64_t{1} << q;
    }
    outcomes[shot] = x;
  }

  SampleCounts out;
  out.n_qubits = nq;
  for (auto x : outcomes) out.add(x);
  return out;
}

}  // namespace qsci
