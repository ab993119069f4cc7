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

#include "qsci/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "qsci/asci.hpp"
#include "qsci/error.hpp"
#include "qsci/measurement.hpp"
#include "qsci/rng.hpp"
#include "qsci/selection.hpp"
#include "qsci/variational.hpp"

namespace qsci {

using nlohmann::json;
namespace fs = std::filesystem;

// ------------------------------------------------------------------ config

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double get_double(const json& obj, const std::string& prefix, const std::string& key, double def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number()) bad(prefix + key, "expected a number");
  return v->get<double>();
}

std::int64_t get_int(const json& obj, const std::string& prefix, const std::string& key,
                     std::int64_t def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number_integer()) bad(prefix + key, "expected an integer");
  return v->get<std::int64_t>();
}

std::size_t get_count(const json& obj, const std::string& prefix, const std::string& key,
                      std::size_t def, std::size_t min = 1) {
  const std::int64_t v = get_int(obj, prefix, key, static_cast<std::int64_t>(def));
  if (v < static_cast<std::int64_t>(min)) bad(prefix + key, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

bool get_bool(const json& obj, const std::string& prefix, const std::string& key, bool def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_boolean()) bad(prefix + key, "expected true or false");
  return v->get<bool>();
}

std::string get_string(const json& obj, const std::string& prefix, const std::string& key,
                       const std::string& def, std::initializer_list<const char*> allowed = {}) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_string()) bad(prefix + key, "expected a string");
  const auto s = v->get<std::string>();
  if (allowed.size() == 0) return s;
  std::string options;
  for (const char* a : allowed) {
    if (s == a) return s;
    options += std::string(options.empty() ? "" : ", ") + a;
  }
  bad(prefix + key, "'" + s + "' is not one of: " + options);
}

template <class T>
std::vector<T> get_list(const json& obj, const std::string& prefix, const std::string& key,
                        std::vector<T> def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_array()) bad(prefix + key, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const json& e = (*v)[i];
    const std::string where = prefix + key + "[" + std::to_string(i) + "]";
    if constexpr (std::is_same_v<T, double>) {
      if (!e.is_number()) bad(where, "expected a number");
      out.push_back(e.get<double>());
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!e.is_string()) bad(where, "expected a string");
      out.push_back(e.get<std::string>());
    } else {
      if (!e.is_number_integer()) bad(where, "expected an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (e.get<std::int64_t>() < 0) bad(where, "must be non-negative");
      out.push_back(e.get<T>());
    }
  }
  return out;
}

}  // namespace

fs::path ExperimentConfig::resolve(const fs::path& p) const {
  return p.is_absolute() ? p : base_dir / p;
}

std::uint64_t ExperimentConfig::require_seed(const std::string& why) const {
  if (!seed) bad("seed", "required for " + why);
  return *seed;
}

json ExperimentConfig::block(const std::string& name) const {
  const json* v = find(raw, name);
  if (!v) return json::object();
  if (!v->is_object()) bad(name, "expected an object");
  return *v;
}

ExperimentConfig parse_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.raw = j;
  cfg.base_dir = base_dir;
  const std::int64_t version = get_int(j, "", "schema_version", kConfigSchemaVersion);
  if (version != kConfigSchemaVersion)
    bad("schema_version", "unsupported version " + std::to_string(version));

  const json* mol = find(j, "molecule");
  if (!mol || !mol->is_object()) bad("molecule", "missing (expected an object with 'fcidump')");
  const std::string path = get_string(*mol, "molecule.", "fcidump", "");
  if (path.empty()) bad("molecule.fcidump", "missing");
  cfg.fcidump = cfg.resolve(path);
  if (!fs::exists(cfg.fcidump)) bad("molecule.fcidump", "file not found: " + cfg.fcidump.string());
  cfg.frozen = get_list<int>(*mol, "molecule.", "frozen", {});
  if (find(*mol, "active")) cfg.active = get_list<int>(*mol, "molecule.", "active", {});

  if (const json* s = find(j, "sector")) {
    if (!s->is_object()) bad("sector", "expected an object");
    const json* ne = find(*s, "n_electrons");
    if (!ne) bad("sector.n_electrons", "missing");
    const auto n = get_int(*s, "sector.", "n_electrons", 0);
    if (n < 0) bad("sector.n_electrons", "must be non-negative");
    const auto two_sz = get_int(*s, "sector.", "two_sz", 0);
    if ((n + two_sz) % 2 != 0) bad("sector.two_sz", "parity does not match n_electrons");
    cfg.sector = Sector{static_cast<int>(n), static_cast<int>(two_sz)};
  }
  if (const json* s = find(j, "seed")) {
    if (!s->is_number_integer() || (!s->is_number_unsigned() && s->get<std::int64_t>() < 0))
      bad("seed", "expected a non-negative integer");
    cfg.seed = s->get<std::uint64_t>();
  }
  cfg.output_dir = get_string(j, "", "output_dir", "out");
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

std::string config_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xF];
  return out;
}

MolecularIntegrals load_molecule(const ExperimentConfig& cfg) {
  MolecularIntegrals mol = read_fcidump(cfg.fcidump);
  if (!cfg.frozen.empty() || cfg.active) {
    std::vector<int> active;
    if (cfg.active) {
      active = *cfg.active;
    } else {
      for (int p = 0; p < mol.n_orbitals; ++p)
        if (std::find(cfg.frozen.begin(), cfg.frozen.end(), p) == cfg.frozen.end()) active.push_back(p);
    }
    try {
      mol = freeze_core(mol, cfg.frozen, active);
    } catch (const std::logic_error& e) {
      bad("molecule.active", e.what());
    }
  }
  return mol;
}

Sector target_sector(const ExperimentConfig& cfg, const MolecularIntegrals& mol) {
  const Sector s = cfg.sector.value_or(mol.reference_sector());
  if (s.n_alpha() < 0 || s.n_beta() < 0 || s.n_alpha() > mol.n_orbitals || s.n_beta() > mol.n_orbitals)
    bad("sector", "not representable on " + std::to_string(mol.n_orbitals) + " orbitals");
  return s;
}

StateVector casci_state(const CasciResult& casci, int root) {
  if (casci.basis.empty()) throw std::invalid_argument("casci_state: empty basis");
  const int nq = casci.basis.front().n_qubits();
  std::vector<cplx> amps(std::size_t{1} << nq, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < casci.basis.size(); ++i)
    amps[casci.basis[i].bits()] = casci.eigenvectors(static_cast<Eigen::Index>(i), root);
  return StateVector::from_amplitudes(nq, std::move(amps));
}

void check_variational(double energy, double reference, const std::string& what) {
  if (energy < reference - 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": energy " << energy << " lies below the exact value " << reference;
    throw NumericalError(msg.str());
  }
}

// ----------------------------------------------------------------- studies

ScalingRecord min_r_for_tolerance(const StateVector& state, const MolecularIntegrals& mol,
                                  const Sector& sector, double epsilon,
                                  std::optional<double> exact_energy) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("min_r_for_tolerance: epsilon must be positive");
  const double exact = exact_energy ? *exact_energy : casci_dense(mol, sector).eigenvalues[0];
  // Tolerances below round-off of the full-space solve are clamped.
  const double tol = std::max(epsilon, 1e-9);

  // Full idealized ranking, then the zero-amplitude sector determinants in
  // ascending order so the full sector is always reachable.
  const auto sector_dets = sector_determinants(mol.n_orbitals, sector);
  SelectionResult ranked = idealized_top_r(state, sector_dets.size(), sector);
  std::vector<Determinant> order = ranked.configs;
  std::vector<double> prob = ranked.frequencies;
  {
    std::unordered_set<Determinant, DeterminantHash> have(order.begin(), order.end());
    for (const auto& d : sector_dets)
      if (!have.count(d)) {
        order.push_back(d);
        prob.push_back(0.0);
      }
  }
  auto energy_at = [&](std::size_t r) {
    return solve_subspace(std::span<const Determinant>(order.data(), r), mol, 1).eigenvalues[0];
  };
  std::size_t lo = 1, hi = order.size();
  double e_hi = energy_at(hi);
  if (e_hi - exact > tol) throw NumericalError("min_r_for_tolerance: full sector misses the tolerance");
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double e = energy_at(mid);
    if (e - exact <= tol) {
      hi = mid;
      e_hi = e;
    } else {
      lo = mid + 1;
    }
  }
  ScalingRecord rec;
  rec.n_qubits = mol.n_qubits();
  rec.epsilon = epsilon;
  rec.min_r = hi;
  rec.energy = energy_at(hi);
  rec.error = rec.energy - exact;
  const double p = prob[hi - 1];
  rec.shot_estimate = p > 0.0 ? 1.0 / p : std::numeric_limits<double>::infinity();
  return rec;
}

TrialSummary summarize(std::vector<TrialResult> trials) {
  TrialSummary s;
  s.trials = std::move(trials);
  const double n = static_cast<double>(s.trials.size());
  if (s.trials.empty()) return s;
  double mean_e = 0.0;
  for (const auto& t : s.trials) {
    s.mean_abs_error += std::abs(t.error);
    mean_e += t.energy;
  }
  s.mean_abs_error /= n;
  mean_e /= n;
  double var = 0.0;
  for (const auto& t : s.trials) var += (t.energy - mean_e) * (t.energy - mean_e);
  s.std_dev = std::sqrt(var / n);
  return s;
}

TrialSummary sampling_trials(const StateVector& state, const MolecularIntegrals& mol,
                             const Sector& sector, std::uint64_t n_shots, int n_trials,
                             std::uint64_t base_seed, bool post_select,
                             std::optional<double> exact_energy) {
  if (n_trials < 2) throw std::invalid_argument("sampling_trials: need at least 2 trials");
  const double exact = exact_energy ? *exact_energy : casci_dense(mol, sector).eigenvalues[0];
  const SectorFilter filter = post_select ? SectorFilter(sector) : SectorFilter();
  std::vector<TrialResult> trials(n_trials);
  for (int k = 0; k < n_trials; ++k) {
    const std::uint64_t seed = stream_seed(base_seed, k, 6);
    const SampleCounts counts = sample(state, n_shots, seed);
    const SubspaceSolution sol = qsci_ground(select_all(counts, filter), mol);
    trials[k] = {seed, sol.eigenvalues[0], sol.eigenvalues[0] - exact, sol.dim()};
  }
  return summarize(std::move(trials));
}

TrialSummary qwc_trials(const StateVector& state, const QubitHamiltonian& h, double exact_energy,
                        std::uint64_t n_shots, int n_trials, std::uint64_t base_seed,
                        AllocationMode mode) {
  if (n_trials < 1) throw std::invalid_argument("qwc_trials: need at least 1 trial");
  const auto groups = qwc_groups(h);
  const auto sigmas = mode == AllocationMode::kHaar ? haar_sigmas(h, groups) : exact_sigmas(state, h, groups);
  const ShotAllocation alloc = allocate_single(sigmas, n_shots);
  std::vector<TrialResult> trials(n_trials);
  for (int k = 0; k < n_trials; ++k) {
    const std::uint64_t seed = stream_seed(base_seed, k, 7);
    const SamplingEstimate est = estimate_sampling(state, h, groups, alloc, seed);
    trials[k] = {seed, est.value, est.value - exact_energy, groups.size()};
  }
  return summarize(std::move(trials));
}

std::vector<NoisyRecord> noisy_demo(const Circuit& circuit, std::span<const double> params,
                                    const Determinant& initial, const NoiseModel& noise,
                                    const MolecularIntegrals& mol, const Sector& sector,
                                    std::uint64_t n_shots, std::span<const std::uint64_t> seeds,
                                    std::span<const std::size_t> r_values, double exact_energy) {
  std::vector<NoisyRecord> out;
  for (std::uint64_t seed : seeds) {
    const SampleCounts counts = noisy_sample(circuit, params, initial, noise, n_shots, seed);
    for (std::size_t r : r_values)
      for (bool filtered : {true, false}) {
        const SelectionResult sel = select_top_r(counts, r, filtered ? SectorFilter(sector) : SectorFilter());
        const SubspaceSolution sol = qsci_ground(sel, mol);
        NoisyRecord rec;
        rec.seed = seed;
        rec.r = r;
        rec.post_selected = filtered;
        rec.dimension = sol.dim();
        rec.discarded = sel.discarded_by_postselect;
        rec.energy = sol.eigenvalues[0];
        rec.error = rec.energy - exact_energy;
        out.push_back(rec);
      }
  }
  return out;
}

std::vector<ObservableRecord> observable_suite(
    const SubspaceSolution& sol, std::span<const std::pair<std::string, MolecularIntegrals>> operators,
    const CasciResult& reference) {
  SubspaceSolution exact;
  exact.configs = reference.basis;
  exact.eigenvalues = reference.eigenvalues.head(1);
  exact.vectors = reference.eigenvectors.leftCols(1);
  std::vector<ObservableRecord> out;
  for (const auto& [name, op] : operators) {
    ObservableRecord rec;
    rec.name = name;
    rec.value = expectation_on_output(sol, 0, op);
    rec.reference = expectation_on_output(exact, 0, op);
    rec.abs_error = std::abs(rec.value - rec.reference);
    out.push_back(rec);
  }
  return out;
}

// ---------------------------------------------------------------- commands

namespace {

struct Context {
  const ExperimentConfig& cfg;
  fs::path out;
  std::string command;
  json meta;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void write_file(const Context& ctx, const std::string& name, const std::string& content) {
  fs::create_directories(ctx.out);
  std::ofstream f(ctx.out / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (ctx.out / name).string());
  f << content;
}

void write_json(const Context& ctx, const std::string& name, json body) {
  body["meta"] = ctx.meta;
  write_file(ctx, name, body.dump(2) + "\n");
}

// CSV with the run metadata on a leading comment line.
void write_csv(const Context& ctx, const std::string& name, const std::string& body) {
  std::string head = "# config_hash=" + ctx.meta["config_hash"].get<std::string>() +
                     " seed=" + (ctx.meta["seed"].is_null() ? std::string("none") : ctx.meta["seed"].dump()) +
                     " version=" + ctx.meta["version"].get<std::string>() + "\n";
  write_file(ctx, name, head + body);
}

struct Problem {
  MolecularIntegrals mol;
  Sector sector;
  CasciResult casci;
};

Problem load_problem(const ExperimentConfig& cfg, int n_roots_hint = 1) {
  (void)n_roots_hint;
  Problem p;
  p.mol = load_molecule(cfg);
  p.sector = target_sector(cfg, p.mol);
  try {
    p.casci = casci_dense(p.mol, p.sector);
  } catch (const std::invalid_argument& e) {
    bad("sector", e.what());
  }
  return p;
}

json sector_json(const Sector& s) { return {{"n_electrons", s.n_electrons}, {"two_sz", s.two_sz}}; }

MergeStrategy merge_strategy(const json& b) {
  return get_string(b, "qsci.", "merge", "round-robin", {"round-robin", "concatenate"}) == "concatenate"
             ? MergeStrategy::kConcatenate
             : MergeStrategy::kRoundRobin;
}

// Selection of the configured kind from a state.
SelectionResult select_from_state(const Context& ctx, const json& b, const StateVector& state,
                                  std::size_t r, const SectorFilter& filter, std::uint64_t stream) {
  const std::string kind = get_string(b, "qsci.", "selection", "idealized", {"idealized", "sampled", "threshold"});
  if (kind == "idealized") return idealized_top_r(state, r, filter);
  const std::uint64_t seed = stream_seed(ctx.cfg.require_seed("sampled selection"), stream, 8);
  const std::uint64_t shots = get_count(b, "qsci.", "shots", 10000);
  const SampleCounts counts = sample(state, shots, seed);
  if (kind == "threshold") return select_by_threshold(counts, get_double(b, "qsci.", "epsilon", 0.01), filter);
  return select_top_r(counts, r, filter);
}

struct VqeSetup {
  Circuit circuit;
  ObjectiveSpec spec;
  Determinant initial;
  BfgsSettings settings;
};

VqeSetup vqe_setup(const ExperimentConfig& cfg, const MolecularIntegrals& mol, const Sector& sector) {
  const json a = cfg.block("ansatz");
  const std::string kind = get_string(a, "ansatz.", "kind", "ry", {"ry", "rsp"});
  const int depth = static_cast<int>(get_count(a, "ansatz.", "depth", 8));
  VqeSetup s;
  try {
    s.circuit = kind == "ry" ? ry_ansatz(mol.n_qubits(), depth) : rsp_ansatz(mol.n_qubits(), depth);
  } catch (const std::invalid_argument& e) {
    bad("ansatz", e.what());
  }
  s.initial = hartree_fock_determinant(mol.n_orbitals, sector);
  s.spec.hamiltonian = jordan_wigner(mol);
  const auto sym = symmetry_operators(mol.n_orbitals);
  if (const json* pens = find(cfg.raw, "penalties")) {
    if (!pens->is_array()) bad("penalties", "expected a list");
    for (std::size_t i = 0; i < pens->size(); ++i) {
      const std::string where = "penalties[" + std::to_string(i) + "].";
      const json& p = (*pens)[i];
      if (!p.is_object()) bad("penalties[" + std::to_string(i) + "]", "expected an object");
      const std::string op = get_string(p, where, "operator", "", {"sz", "number"});
      if (op.empty()) bad(where + "operator", "missing");
      const double weight = get_double(p, where, "weight", 0.0);
      if (weight < 0.0) bad(where + "weight", "must be non-negative");
      s.spec.penalties.push_back({op == "sz" ? sym.sz : sym.number, get_double(p, where, "target", 0.0), weight});
    }
  }
  const json o = cfg.block("optimizer");
  s.settings.max_iterations = static_cast<int>(get_count(o, "optimizer.", "max_iterations", 500, 0));
  s.settings.gradient_tolerance = get_double(o, "optimizer.", "gradient_tolerance", 1e-6);
  s.settings.fd_step = get_double(o, "optimizer.", "fd_step", 1e-6);
  if (!(s.settings.fd_step > 0.0)) bad("optimizer.fd_step", "must be positive");
  return s;
}

VariationalState run_vqe(const VqeSetup& s, std::uint64_t seed) {
  return prepare_vqd_chain(s.spec, s.circuit, s.initial, 1, 0.0, s.settings, seed).front();
}

json cmd_parse_check(Context& ctx) {
  const MolecularIntegrals mol = load_molecule(ctx.cfg);
  write_json(ctx, "integrals.json", {{"integrals", to_json(mol)}});
  return {{"n_orbitals", mol.n_orbitals},
          {"n_electrons", mol.n_electrons},
          {"ms2", mol.ms2},
          {"core_energy", mol.core_energy},
          {"symmetry_violation", mol.symmetry_violation()}};
}

json cmd_casci(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const std::size_t roots = std::min<std::size_t>(get_count(ctx.cfg.block("casci"), "casci.", "n_roots", 1),
                                                  p.casci.basis.size());
  std::vector<double> e(p.casci.eigenvalues.data(), p.casci.eigenvalues.data() + roots);
  write_json(ctx, "casci.json", {{"sector", sector_json(p.sector)}, {"dimension", p.casci.basis.size()}, {"eigenvalues", e}});
  return {{"dimension", p.casci.basis.size()}, {"ground_energy", e.front()}};
}

json cmd_qsci_ground(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("qsci");
  const std::size_t r = get_count(b, "qsci.", "r", 16);
  const bool post = get_bool(b, "qsci.", "post_select", true);
  const SectorFilter filter = post ? SectorFilter(p.sector) : SectorFilter();
  const std::string input = get_string(b, "qsci.", "input", "casci", {"casci", "counts"});
  SelectionResult sel;
  if (input == "counts") {
    const std::string file = get_string(b, "qsci.", "counts_file", "");
    if (file.empty()) bad("qsci.counts_file", "required when qsci.input is 'counts'");
    std::ifstream in(ctx.cfg.resolve(file));
    if (!in) bad("qsci.counts_file", "cannot open " + ctx.cfg.resolve(file).string());
    SampleCounts counts;
    try {
      counts = SampleCounts::from_json(json::parse(in));
    } catch (const std::exception& e) {
      bad("qsci.counts_file", e.what());
    }
    const std::string kind = get_string(b, "qsci.", "selection", "sampled", {"sampled", "threshold"});
    sel = kind == "threshold" ? select_by_threshold(counts, get_double(b, "qsci.", "epsilon", 0.01), filter)
                              : select_top_r(counts, r, filter);
  } else {
    sel = select_from_state(ctx, b, casci_state(p.casci, 0), r, filter, 0);
  }
  const SubspaceSolution sol = qsci_ground(sel, p.mol);
  const double exact = p.casci.eigenvalues[0];
  if (post) check_variational(sol.eigenvalues[0], exact, "qsci-ground");
  write_json(ctx, "selection.json", {{"selection", sel.to_json()}});
  write_json(ctx, "solution.json", {{"solution", sol.to_json()}, {"exact_energy", exact}});
  return {{"dimension", sol.dim()},
          {"energy", sol.eigenvalues[0]},
          {"exact_energy", exact},
          {"error", sol.eigenvalues[0] - exact},
          {"shortfall", sel.shortfall()}};
}

json cmd_qsci_excited(Context& ctx, const std::string& scheme) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("qsci");
  const std::size_t n_states = get_count(b, "qsci.", "n_states", 3);
  if (n_states > p.casci.basis.size()) bad("qsci.n_states", "exceeds the sector dimension");
  const std::size_t r = get_count(b, "qsci.", "r", 16);
  const bool post = get_bool(b, "qsci.", "post_select", true);
  const SectorFilter filter = post ? SectorFilter(p.sector) : SectorFilter();
  std::vector<std::size_t> r_list = get_list<std::size_t>(b, "qsci.", "r_list", std::vector<std::size_t>(n_states, r));
  if (r_list.size() != n_states) bad("qsci.r_list", "needs one entry per state");
  for (auto v : r_list)
    if (v < 1) bad("qsci.r_list", "entries must be at least 1");

  std::vector<SelectionResult> sels;
  for (std::size_t k = 0; k < n_states; ++k)
    sels.push_back(select_from_state(ctx, b, casci_state(p.casci, static_cast<int>(k)),
                                     std::max(r, r_list[k]), filter, k));

  json states = json::array();
  json solutions = json::array();
  const double e0 = p.casci.eigenvalues[0];
  if (scheme == "single") {
    const SubspaceSolution sol = qsci_single_diag(sels, r, merge_strategy(b), p.mol, static_cast<int>(n_states));
    for (std::size_t k = 0; k < n_states; ++k) {
      const double e = sol.eigenvalues[k], ex = p.casci.eigenvalues[k];
      if (post) check_variational(e, ex, "qsci-excited single, state " + std::to_string(k));
      states.push_back({{"state", k}, {"energy", e}, {"exact_energy", ex}, {"error", e - ex}});
    }
    solutions.push_back(sol.to_json());
  } else {
    std::vector<double> betas;
    if (const json* bj = find(b, "betas"); bj && !(bj->is_string() && bj->get<std::string>() == "auto")) {
      betas = get_list<double>(b, "qsci.", "betas", {});
      if (betas.size() + 1 < n_states) bad("qsci.betas", "needs one beta per prior state");
      for (double v : betas)
        if (!(v > 0.0)) bad("qsci.betas", "entries must be positive");
    }
    const auto sols = qsci_sequential(sels, r_list, p.mol, betas);
    for (std::size_t k = 0; k < n_states; ++k) {
      const double e = sols[k].eigenvalues[0], ex = p.casci.eigenvalues[k];
      if (post) check_variational(e, e0, "qsci-excited sequential, state " + std::to_string(k));
      states.push_back({{"state", k},
                        {"energy", e},
                        {"expectation", expectation_on_output(sols[k], 0, p.mol)},
                        {"exact_energy", ex},
                        {"error", e - ex}});
      solutions.push_back(sols[k].to_json());
    }
  }
  write_json(ctx, "solutions.json", {{"scheme", scheme}, {"states", states}, {"solutions", solutions}});
  return {{"scheme", scheme}, {"states", states}};
}

std::vector<std::size_t> default_r_values(std::size_t dim) {
  std::vector<std::size_t> out;
  for (std::size_t r = 1; r < dim; r *= 2) out.push_back(r);
  out.push_back(dim);
  return out;
}

json cmd_vqe(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const VqeSetup s = vqe_setup(ctx.cfg, p.mol, p.sector);
  const std::uint64_t seed = ctx.cfg.require_seed("vqe initial parameters");
  const VariationalState v = run_vqe(s, seed);
  const json b = ctx.cfg.block("vqe");
  const auto r_values = get_list<std::size_t>(b, "vqe.", "r_values", default_r_values(p.casci.basis.size()));
  const double exact = p.casci.eigenvalues[0];

  std::ostringstream trace;
  trace << "iteration,objective,energy\n";
  std::ostringstream history;
  history << "iteration,r,dimension,energy,error\n";
  const Objective obj(s.spec, s.circuit, s.initial);
  for (std::size_t it = 0; it < v.trace.entries.size(); ++it) {
    const auto& e = v.trace.entries[it];
    const StateVector st = obj.state(e.params);
    trace << it << ',' << fmt(e.value) << ',' << fmt(expectation(st, s.spec.hamiltonian)) << '\n';
    for (std::size_t r : r_values) {
      const SubspaceSolution sol = qsci_ground(idealized_top_r(st, r, p.sector), p.mol);
      check_variational(sol.eigenvalues[0], exact, "vqe history");
      history << it << ',' << r << ',' << sol.dim() << ',' << fmt(sol.eigenvalues[0]) << ','
              << fmt(sol.eigenvalues[0] - exact) << '\n';
    }
  }
  write_csv(ctx, "vqe_trace.csv", trace.str());
  write_csv(ctx, "qsci_history.csv", history.str());
  write_json(ctx, "vqe.json", {{"energy", v.energy}, {"exact_energy", exact}, {"params", v.params},
                               {"converged", v.trace.converged}, {"iterations", v.trace.entries.size() - 1},
                               {"circuit", s.circuit.to_text()}});
  return {{"energy", v.energy}, {"exact_energy", exact}, {"iterations", v.trace.entries.size() - 1}};
}

json cmd_vqd(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const VqeSetup s = vqe_setup(ctx.cfg, p.mol, p.sector);
  const json b = ctx.cfg.block("vqd");
  const std::size_t n_states = get_count(b, "vqd.", "n_states", 3);
  if (n_states > p.casci.basis.size()) bad("vqd.n_states", "exceeds the sector dimension");
  const double w = get_double(b, "vqd.", "overlap_weight", 1.0);
  if (w < 0.0) bad("vqd.overlap_weight", "must be non-negative");
  const auto chain = prepare_vqd_chain(s.spec, s.circuit, s.initial, static_cast<int>(n_states), w, s.settings,
                                       ctx.cfg.require_seed("vqd initial parameters"));
  json states = json::array();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    json overlaps = json::array();
    for (std::size_t j = 0; j < k; ++j) overlaps.push_back(std::norm(chain[j].state.inner(chain[k].state)));
    check_variational(chain[k].energy, p.casci.eigenvalues[0], "vqd state " + std::to_string(k));
    states.push_back({{"state", k},
                      {"energy", chain[k].energy},
                      {"exact_energy", p.casci.eigenvalues[k]},
                      {"overlaps_with_previous", overlaps},
                      {"params", chain[k].params}});
    write_csv(ctx, "vqd_state_" + std::to_string(k) + ".csv", chain[k].trace.to_csv());
  }
  write_json(ctx, "vqd.json", {{"states", states}});
  return {{"states", states.size()}, {"energies", [&] {
             json e = json::array();
             for (const auto& c : chain) e.push_back(c.energy);
             return e;
           }()}};
}

json cmd_scaling(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("scaling");
  if (p.mol.n_qubits() > 16 && !get_bool(b, "scaling.", "allow_large", false))
    bad("scaling.allow_large", "set to true to run above 16 qubits");
  const auto eps = get_list<double>(b, "scaling.", "epsilons", {0.1, 0.01, 0.001});
  for (double e : eps)
    if (!(e > 0.0)) bad("scaling.epsilons", "entries must be positive");
  const StateVector st = casci_state(p.casci, 0);
  std::ostringstream csv;
  csv << "n_qubits,epsilon,min_r,shot_estimate,energy,error\n";
  json rows = json::array();
  for (double e : eps) {
    const ScalingRecord rec = min_r_for_tolerance(st, p.mol, p.sector, e, p.casci.eigenvalues[0]);
    check_variational(rec.energy, p.casci.eigenvalues[0], "scaling");
    csv << rec.n_qubits << ',' << fmt(rec.epsilon) << ',' << rec.min_r << ',' << fmt(rec.shot_estimate) << ','
        << fmt(rec.energy) << ',' << fmt(rec.error) << '\n';
    rows.push_back({{"epsilon", e}, {"min_r", rec.min_r}, {"shot_estimate", rec.shot_estimate}});
  }
  write_csv(ctx, "scaling.csv", csv.str());
  return {{"records", rows}};
}

json cmd_sampling_trials(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("sampling_trials");
  const auto shots = get_list<std::uint64_t>(b, "sampling_trials.", "shots", {100, 1000, 10000});
  for (auto s : shots)
    if (s < 1) bad("sampling_trials.shots", "entries must be at least 1");
  const int trials = static_cast<int>(get_count(b, "sampling_trials.", "trials", 10, 2));
  const bool post = get_bool(b, "sampling_trials.", "post_select", true);
  const bool qwc = get_bool(b, "sampling_trials.", "qwc", true);
  const std::uint64_t seed = ctx.cfg.require_seed("sampling trials");
  const StateVector st = casci_state(p.casci, 0);
  const double exact = p.casci.eigenvalues[0];
  const QubitHamiltonian h = jordan_wigner(p.mol);

  std::ostringstream csv;
  csv << "method,shots,trial,seed,energy,error\n";
  json summary = json::array();
  for (std::size_t si = 0; si < shots.size(); ++si) {
    const auto q = sampling_trials(st, p.mol, p.sector, shots[si], trials, stream_seed(seed, si, 9), post, exact);
    for (std::size_t k = 0; k < q.trials.size(); ++k) {
      if (post) check_variational(q.trials[k].energy, exact, "sampling trial");
      csv << "qsci," << shots[si] << ',' << k << ',' << q.trials[k].seed << ',' << fmt(q.trials[k].energy) << ','
          << fmt(q.trials[k].error) << '\n';
    }
    json row = {{"shots", shots[si]}, {"qsci_mean_abs_error", q.mean_abs_error}, {"qsci_std", q.std_dev}};
    if (qwc) {
      const auto c = qwc_trials(st, h, exact, shots[si], trials, stream_seed(seed, si, 10));
      for (std::size_t k = 0; k < c.trials.size(); ++k)
        csv << "qwc," << shots[si] << ',' << k << ',' << c.trials[k].seed << ',' << fmt(c.trials[k].energy) << ','
            << fmt(c.trials[k].error) << '\n';
      row["qwc_mean_abs_error"] = c.mean_abs_error;
      row["qwc_std"] = c.std_dev;
    }
    summary.push_back(row);
  }
  write_csv(ctx, "trials.csv", csv.str());
  write_json(ctx, "trials_summary.json", {{"summary", summary}});
  return {{"summary", summary}};
}

NoiseModel noise_from(const ExperimentConfig& cfg) {
  const json n = cfg.block("noise");
  NoiseModel m;
  if (find(n, "f1") || find(n, "f2") || find(n, "f_ro")) {
    m = NoiseModel{1.0 - get_double(n, "noise.", "f1", 1.0), 1.0 - get_double(n, "noise.", "f2", 1.0),
                   1.0 - get_double(n, "noise.", "f_ro", 1.0)};
  } else {
    m = NoiseModel{get_double(n, "noise.", "p1", 0.0), get_double(n, "noise.", "p2", 0.0),
                   get_double(n, "noise.", "p_ro", 0.0)};
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    bad("noise", e.what());
  }
  return m;
}

json cmd_noisy_demo(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("noisy_demo");
  const NoiseModel noise = noise_from(ctx.cfg);
  const std::uint64_t shots = get_count(b, "noisy_demo.", "shots", 10000);
  const std::uint64_t seed = ctx.cfg.require_seed("noisy emulation");
  auto seeds = get_list<std::uint64_t>(b, "noisy_demo.", "seeds", {});
  if (seeds.empty())
    for (std::uint64_t k = 0; k < get_count(b, "noisy_demo.", "n_seeds", 5); ++k) seeds.push_back(stream_seed(seed, k, 11));
  const auto r_values = get_list<std::size_t>(b, "noisy_demo.", "r_values", {8, 16, 27});
  for (auto r : r_values)
    if (r < 1) bad("noisy_demo.r_values", "entries must be at least 1");

  const VqeSetup s = vqe_setup(ctx.cfg, p.mol, p.sector);
  const VariationalState v = run_vqe(s, seed);
  const double exact = p.casci.eigenvalues[0];
  const auto recs = noisy_demo(s.circuit, v.params, s.initial, noise, p.mol, p.sector, shots, seeds, r_values, exact);

  std::ostringstream csv;
  csv << "seed,r,post_selected,dimension,discarded,energy,error\n";
  for (const auto& r : recs) {
    if (r.post_selected) check_variational(r.energy, exact, "noisy demo");
    csv << r.seed << ',' << r.r << ',' << (r.post_selected ? 1 : 0) << ',' << r.dimension << ',' << r.discarded
        << ',' << fmt(r.energy) << ',' << fmt(r.error) << '\n';
  }
  write_csv(ctx, "noisy.csv", csv.str());
  write_json(ctx, "noisy.json", {{"noise", noise.to_json()}, {"vqe_energy", v.energy}, {"exact_energy", exact},
                                 {"params", v.params}});
  return {{"noise", noise.to_json()}, {"vqe_energy", v.energy}, {"records", recs.size()}};
}

json cmd_qwc_estimate(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("qwc");
  const std::uint64_t shots = get_count(b, "qwc.", "shots", 10000);
  const std::string mode = get_string(b, "qwc.", "allocation", "haar", {"haar", "exact"});
  const bool two_round = get_bool(b, "qwc.", "two_round", false);
  const double first = get_double(b, "qwc.", "first_fraction", 0.2);
  const std::uint64_t seed = ctx.cfg.require_seed("qwc estimation");
  const StateVector st = casci_state(p.casci, 0);
  const QubitHamiltonian h = jordan_wigner(p.mol);
  const auto groups = qwc_groups(h);
  const auto sigmas = mode == "haar" ? haar_sigmas(h, groups) : exact_sigmas(st, h, groups);
  ShotAllocation alloc;
  try {
    alloc = allocate_single(sigmas, shots);
  } catch (const std::invalid_argument& e) {
    bad("qwc.shots", e.what());
  }
  SamplingEstimate est;
  if (two_round) {
    try {
      est = estimate_two_round(st, h, groups, shots, first, seed);
    } catch (const std::invalid_argument& e) {
      bad("qwc.first_fraction", e.what());
    }
  } else {
    est = estimate_sampling(st, h, groups, alloc, seed);
  }
  const double exact = p.casci.eigenvalues[0];
  write_json(ctx, "groups.json", {{"groups", groups_to_json(h, groups)}, {"sigmas", sigmas}});
  write_json(ctx, "allocation.json", {{"allocation", alloc.to_json()}, {"mode", mode}});
  json e = {{"estimate", est.value}, {"standard_error", est.standard_error}, {"shots", est.shots},
            {"exact_energy", exact}, {"error", est.value - exact}, {"n_groups", groups.size()},
            {"two_round", two_round}};
  write_json(ctx, "estimate.json", e);
  return e;
}

json cmd_asci(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("asci");
  AsciConfig a;
  a.r = get_count(b, "asci.", "r", std::min<std::size_t>(20, p.casci.basis.size()));
  a.r_core = get_count(b, "asci.", "r_core", 2);
  a.delta = get_double(b, "asci.", "delta", 1e-4);
  a.max_iterations = static_cast<int>(get_count(b, "asci.", "max_iterations", 20, 0));
  a.tolerance = get_double(b, "asci.", "tolerance", 1e-8);
  try {
    a.validate();
  } catch (const std::invalid_argument& e) {
    bad("asci", e.what());
  }
  const AsciResult res = asci_run(p.mol, p.sector, a);
  for (const auto& t : res.trace) check_variational(t.energy, p.casci.eigenvalues[0], "asci");
  write_csv(ctx, "asci_trace.csv", res.trace_csv());
  write_json(ctx, "solution.json", {{"solution", res.solution.to_json()}, {"converged", res.converged},
                                    {"exact_energy", p.casci.eigenvalues[0]}});
  return {{"energy", res.solution.eigenvalues[0]}, {"exact_energy", p.casci.eigenvalues[0]},
          {"iterations", res.trace.back().iteration}, {"converged", res.converged}};
}

json cmd_observables(Context& ctx) {
  const Problem p = load_problem(ctx.cfg);
  const json b = ctx.cfg.block("observables");
  const auto paths = get_list<std::string>(b, "observables.", "operators", {});
  if (paths.empty()) bad("observables.operators", "needs at least one FCIDUMP operator file");
  const std::size_t r = get_count(b, "observables.", "r", p.casci.basis.size());
  std::vector<std::pair<std::string, MolecularIntegrals>> ops;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const fs::path f = ctx.cfg.resolve(paths[i]);
    if (!fs::exists(f)) bad("observables.operators[" + std::to_string(i) + "]", "file not found: " + f.string());
    MolecularIntegrals op = read_fcidump(f);
    if (op.n_orbitals != p.mol.n_orbitals)
      bad("observables.operators[" + std::to_string(i) + "]", "orbital count differs from the molecule");
    ops.emplace_back(f.filename().string(), std::move(op));
  }
  const SubspaceSolution sol = qsci_ground(idealized_top_r(casci_state(p.casci, 0), r, p.sector), p.mol);
  check_variational(sol.eigenvalues[0], p.casci.eigenvalues[0], "observables");
  const auto recs = observable_suite(sol, ops, p.casci);
  std::ostringstream csv;
  csv << "observable,value,reference,abs_error\n";
  for (const auto& rec : recs)
    csv << rec.name << ',' << fmt(rec.value) << ',' << fmt(rec.reference) << ',' << fmt(rec.abs_error) << '\n';
  write_csv(ctx, "observables.csv", csv.str());
  return {{"operators", recs.size()}, {"dimension", sol.dim()}};
}

}  // namespace

json run_experiment(const std::string& command, const ExperimentConfig& cfg, const fs::path& out_dir) {
  Context ctx{cfg, out_dir, command, json::object()};
  ctx.meta = {{"command", command},
              {"config_hash", config_hash(cfg.raw)},
              {"seed", cfg.seed ? json(*cfg.seed) : json(nullptr)},
              {"version", QSCI_VERSION}};
  json result;
  if (command == "parse-check") result = cmd_parse_check(ctx);
  else if (command == "casci") result = cmd_casci(ctx);
  else if (command == "qsci-ground") result = cmd_qsci_ground(ctx);
  else if (command == "qsci-excited-single") result = cmd_qsci_excited(ctx, "single");
  else if (command == "qsci-excited-sequential") result = cmd_qsci_excited(ctx, "sequential");
  else if (command == "vqe") result = cmd_vqe(ctx);
  else if (command == "vqd") result = cmd_vqd(ctx);
  else if (command == "scaling") result = cmd_scaling(ctx);
  else if (command == "sampling-trials") result = cmd_sampling_trials(ctx);
  else if (command == "noisy-demo") result = cmd_noisy_demo(ctx);
  else if (command == "qwc-estimate") result = cmd_qwc_estimate(ctx);
  else if (command == "asci") result = cmd_asci(ctx);
  else if (command == "observables") result = cmd_observables(ctx);
  else throw ConfigError("unknown command '" + command + "'");
  write_json(ctx, "summary.json", {{"result", result}});
  return result;
}

}  // namespace qsci
