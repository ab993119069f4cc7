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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qsci/circuit.hpp"
#include "qsci/integrals.hpp"
#include "qsci/pauli.hpp"
#include "qsci/qsci.hpp"
#include "qsci/sampling.hpp"
#include "qsci/statevector.hpp"

namespace qsci {

inline constexpr int kConfigSchemaVersion = 1;

/// Validated experiment configuration. Command-specific blocks stay in
/// raw and are validated when the command reads them.
struct ExperimentConfig {
  nlohmann::json raw;
  std::filesystem::path base_dir;  // relative paths resolve against this
  std::filesystem::path fcidump;
  std::vector<int> frozen;
  std::optional<std::vector<int>> active;
  std::optional<Sector> sector;  // default: the FCIDUMP reference sector
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir;

  std::filesystem::path resolve(const std::filesystem::path& p) const;
  /// Throws ConfigError naming "seed" when no seed was given.
  std::uint64_t require_seed(const std::string& why) const;
  /// Sub-object or empty object; ConfigError if present but not an object.
  nlohmann::json block(const std::string& name) const;
};

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64 of the canonical (sorted-key) JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

MolecularIntegrals load_molecule(const ExperimentConfig& cfg);
Sector target_sector(const ExperimentConfig& cfg, const MolecularIntegrals& mol);

/// A CASCI eigenvector embedded in the full 2^n state space.
StateVector casci_state(const CasciResult& casci, int root);

/// Throws NumericalError when energy < reference - 1e-12.
void check_variational(double energy, double reference, const std::string& what);

// ---------------------------------------------------------------- studies

struct ScalingRecord {
  int n_qubits = 0;
  double epsilon = 0.0;
  std::size_t min_r = 0;
  double shot_estimate = 0.0;  // 1 / |c_R|^2
  double energy = 0.0;
  double error = 0.0;
};

/// Smallest r with E_r - E_exact <= epsilon under idealized selection from
/// the state. Binary search, valid because E_r is non-increasing in r.
ScalingRecord min_r_for_tolerance(const StateVector& state, const MolecularIntegrals& mol,
                                  const Sector& sector, double epsilon,
                                  std::optional<double> exact_energy = {});

struct TrialResult {
  std::uint64_t seed = 0;
  double energy = 0.0;
  double error = 0.0;  // energy - exact
  std::size_t dimension = 0;
};

struct TrialSummary {
  std::vector<TrialResult> trials;
  double mean_abs_error = 0.0;
  double std_dev = 0.0;  // of the energies, population (ddof 0)
};

TrialSummary summarize(std::vector<TrialResult> trials);

/// Each trial samples n_shots with seed stream (base_seed, trial), keeps
/// every observed configuration (post-selected if asked) and runs QSCI.
TrialSummary sampling_trials(const StateVector& state, const MolecularIntegrals& mol,
                             const Sector& sector, std::uint64_t n_shots, int n_trials,
                             std::uint64_t base_seed, bool post_select = true,
                             std::optional<double> exact_energy = {});

enum class AllocationMode { kHaar, kExact };

/// Conventional QWC estimation of <H> with the same seed discipline.
TrialSummary qwc_trials(const StateVector& state, const QubitHamiltonian& h, double exact_energy,
                        std::uint64_t n_shots, int n_trials, std::uint64_t base_seed,
                        AllocationMode mode = AllocationMode::kHaar);

struct NoisyRecord {
  std::uint64_t seed = 0;
  std::size_t r = 0;
  bool post_selected = false;
  std::size_t dimension = 0;
  std::uint64_t discarded = 0;
  double energy = 0.0;
  double error = 0.0;
};

/// Noisy trajectories per seed; each r evaluated with and without the
/// sector filter on the same counts.
std::vector<NoisyRecord> noisy_demo(const Circuit& circuit, std::span<const double> params,
                                    const Determinant& initial, const NoiseModel& noise,
                                    const MolecularIntegrals& mol, const Sector& sector,
                                    std::uint64_t n_shots, std::span<const std::uint64_t> seeds,
                                    std::span<const std::size_t> r_values, double exact_energy);

struct ObservableRecord {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
};

/// expectation_on_output of state 0 for each operator, against the CASCI
/// ground-state expectation.
std::vector<ObservableRecord> observable_suite(
    const SubspaceSolution& sol, std::span<const std::pair<std::string, MolecularIntegrals>> operators,
    const CasciResult& reference);

/// Runs one CLI subcommand and writes its result files into out_dir.
/// Returns a short JSON summary (also written as summary.json).
nlohmann::json run_experiment(const std::string& command, const ExperimentConfig& cfg,
                              const std::filesystem::path& out_dir);

}  // namespace qsci
