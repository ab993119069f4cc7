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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qsci/pauli.hpp"
#include "qsci/statevector.hpp"

namespace qsci {

/// Terms measured together. basis holds the union of member letters; a
/// qubit outside its support is free.
struct MeasurementGroup {
  std::vector<std::size_t> members;  // indices into QubitHamiltonian::terms()
  PauliString basis;
};

/// Sorted insertion: non-identity terms by descending |c| (ties by term
/// index), each into the first qubit-wise compatible group.
std::vector<MeasurementGroup> qwc_groups(const QubitHamiltonian& h);
nlohmann::json groups_to_json(const QubitHamiltonian& h, std::span<const MeasurementGroup> groups);

/// Haar-average proxy: sigma_l^2 = sum_{j in l} |c_j|^2.
std::vector<double> haar_sigmas(const QubitHamiltonian& h, std::span<const MeasurementGroup> groups);
/// Exact standard deviation of each group operator in the given state.
std::vector<double> exact_sigmas(const StateVector& state, const QubitHamiltonian& h,
                                 std::span<const MeasurementGroup> groups);

struct ShotAllocation {
  std::vector<std::uint64_t> shots;
  std::uint64_t total = 0;
  nlohmann::json to_json() const;
};

/// M_l proportional to sigma_l, largest-remainder rounding (ties to the
/// lower group index), sum exactly total.
ShotAllocation allocate_single(std::span<const double> sigmas, std::uint64_t total);
/// M_l proportional to sqrt(sum_i sigma_l^(i)^2); rows are observables.
ShotAllocation allocate_multi(const Eigen::MatrixXd& sigmas, std::uint64_t total);

struct SamplingEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t shots = 0;
};

/// Per group: rotate into the shared basis (H for X, SDG then H for Y),
/// sample M_l shots with stream (seed, group), average the group
/// eigenvalue. The identity coefficient is added exactly.
SamplingEstimate estimate_sampling(const StateVector& state, const QubitHamiltonian& h,
                                   std::span<const MeasurementGroup> groups,
                                   const ShotAllocation& allocation, std::uint64_t seed);

/// Two rounds: first_fraction of the shots with the Haar allocation, the
/// rest allocated by the first round's sample deviations; samples pooled.
SamplingEstimate estimate_two_round(const StateVector& state, const QubitHamiltonian& h,
                                    std::span<const MeasurementGroup> groups, std::uint64_t total,
                                    double first_fraction, std::uint64_t seed);

}  // namespace qsci
