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

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "qsci/integrals.hpp"

namespace qsci::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(QSCI_FIXTURE_DIR) / name;
}

// Reference energies produced by an external quantum-chemistry package when
// the fixtures were generated.
inline const nlohmann::json& oracle() {
  static const nlohmann::json j = [] {
    std::ifstream in(fixture("oracle.json"));
    return nlohmann::json::parse(in);
  }();
  return j;
}

inline const nlohmann::json& oracle(const std::string& system) { return oracle()["fixtures"][system]; }

inline MolecularIntegrals load(const std::string& system) {
  return read_fcidump(fixture(oracle(system)["file"].get<std::string>()));
}

}  // namespace qsci::testing
