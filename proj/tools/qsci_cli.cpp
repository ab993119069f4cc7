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

// Command-line front end. Every subcommand reads a JSON config and writes
// its result files into the output directory.

#include <omp.h>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qsci/error.hpp"
#include "qsci/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
};

int run(const std::string& command, const Globals& g) {
  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);
    qsci::ExperimentConfig cfg = qsci::load_config(g.config);
    if (g.seed) cfg.seed = *g.seed;
    const std::filesystem::path out = g.out.empty() ? cfg.resolve(cfg.output_dir) : std::filesystem::path(g.out);
    const auto result = qsci::run_experiment(command, cfg, out);
    std::cout << result.dump(2) << "\n";
    return 0;
  } catch (const qsci::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qsci::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qsci::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-selected configuration interaction toolkit"};
  app.set_version_flag("--version", std::string(QSCI_VERSION));
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Globals g;
  app.add_option("--config", g.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Seed for stochastic steps (overrides the config)");
  app.add_option("--out", g.out, "Output directory (overrides the config)");
  app.add_option("--threads", g.threads, "OpenMP thread count")->check(CLI::NonNegativeNumber);

  std::string command;
  for (const char* name : {"parse-check", "casci", "qsci-ground", "vqe", "vqd", "scaling", "sampling-trials",
                           "noisy-demo", "qwc-estimate", "asci", "observables"}) {
    app.add_subcommand(name)->callback([&command, name] { command = name; });
  }
  std::string scheme;
  auto* excited = app.add_subcommand("qsci-excited", "Excited states (single|sequential)");
  excited->add_option("scheme", scheme)->required()->check(CLI::IsMember({"single", "sequential"}));
  excited->callback([&] { command = "qsci-excited-" + scheme; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  return run(command, g);
}
