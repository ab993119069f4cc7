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

#include <gtest/gtest.h>

#include <cmath>

#include "qsci/circuit.hpp"
#include "qsci/integrals.hpp"
#include "qsci/variational.hpp"
#include "test_support.hpp"

namespace qsci {
namespace {

using testing::load;
using testing::oracle;

TEST(Bfgs, QuadraticBowl) {
  const auto tr = minimize([](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1); }, {0.0});
  EXPECT_TRUE(tr.converged);
  EXPECT_NEAR(tr.final().params[0], 1.0, 1e-6);
}

TEST(Bfgs, Rosenbrock) {
  BfgsSettings st;
  st.max_iterations = 2000;
  const auto tr = minimize(
      [](std::span<const double> x) { return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2); },
      {-1.2, 1.0}, st);
  EXPECT_NEAR(tr.final().params[0], 1.0, 1e-4);
  EXPECT_NEAR(tr.final().params[1], 1.0, 1e-4);
}

TEST(Bfgs, ZeroIterationsKeepsInitialPoint) {
  BfgsSettings st;
  st.max_iterations = 0;
  const auto tr = minimize([](std::span<const double> x) { return x[0] * x[0]; }, {3.0}, st);
  ASSERT_EQ(tr.entries.size(), 1u);
  EXPECT_EQ(tr.entries[0].params[0], 3.0);
  EXPECT_DOUBLE_EQ(tr.entries[0].value, 9.0);
}

TEST(Bfgs, TraceValuesNeverIncrease) {
  const auto tr = minimize(
      [](std::span<const double> x) { return std::sin(3 * x[0]) + x[0] * x[0] + std::cos(x[1]) * x[1] * 0.1 + x[1] * x[1]; },
      {2.0, -1.5});
  for (std::size_t i = 1; i < tr.entries.size(); ++i) EXPECT_LE(tr.entries[i].value, tr.entries[i - 1].value);
}

TEST(Vqe, RyAnsatzReachesH2Ground) {
  const auto mol = load("h2");
  ObjectiveSpec spec;
  spec.hamiltonian = jordan_wigner(mol);
  const auto hf = hartree_fock_determinant(mol.n_orbitals, mol.reference_sector());
  const auto v = prepare_vqd_chain(spec, ry_ansatz(4, 2), hf, 1, 0.0, {}, 1).front();
  EXPECT_NEAR(v.energy, oracle("h2")["fci_energy"].get<double>(), 1e-6);
  EXPECT_EQ(v.trace.final().params, v.params);
}

TEST(Vqd, SecondStateIsOrthogonalExcitedState) {
  const auto mol = load("h2");
  ObjectiveSpec spec;
  spec.hamiltonian = jordan_wigner(mol);
  const auto ops = symmetry_operators(mol.n_orbitals);
  // The overlap weight must exceed the symmetry penalties or the first root
  // stays a local minimum of the deflated objective.
  spec.penalties.push_back({ops.number, 2.0, 1.0});
  spec.penalties.push_back({ops.sz, 0.0, 1.0});
  const auto hf = hartree_fock_determinant(mol.n_orbitals, mol.reference_sector());
  const auto chain = prepare_vqd_chain(spec, ry_ansatz(4, 3), hf, 2, 4.0, {}, 2);
  ASSERT_EQ(chain.size(), 2u);
  const auto& e = oracle("h2")["sector_energies"];
  EXPECT_NEAR(chain[0].energy, e[0].get<double>(), 1e-5);
  EXPECT_NEAR(chain[1].energy, e[1].get<double>(), 1e-6);
  EXPECT_LT(std::norm(chain[0].state.inner(chain[1].state)), 1e-3);
}

TEST(Objective, PenaltyFoldsIntoEffectiveHamiltonian) {
  const auto mol = load("h2");
  ObjectiveSpec spec;
  spec.hamiltonian = jordan_wigner(mol);
  const auto ops = symmetry_operators(mol.n_orbitals);
  spec.penalties.push_back({ops.number, 2.0, 5.0});
  const Circuit c = ry_ansatz(4, 1);
  const Objective obj(spec, c, Determinant(0b0001, 4));
  const std::vector<double> p(c.n_params(), 0.0);
  // One electron: penalty 5 * (1 - 2)^2 on top of the energy.
  EXPECT_NEAR(obj(p), obj.energy(p) + 5.0, 1e-12);
}

TEST(InitialParameters, DeterministicAndSmall) {
  const auto a = initial_parameters(20, 5), b = initial_parameters(20, 5), c = initial_parameters(20, 6);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (double x : a) EXPECT_LE(std::abs(x), 0.1);
}

}  // namespace
}  // namespace qsci
