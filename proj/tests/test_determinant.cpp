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

#include <random>
#include <set>

#include "oracles.hpp"
#include "qsci/determinant.hpp"
#include "qsci/integrals.hpp"
#include "test_support.hpp"

namespace qsci {
namespace {

using testing::load;
using testing::oracle;

TEST(Determinant, StringFormHasQubitZeroRightmost) {
  const auto d = Determinant::from_string("00000101");
  EXPECT_EQ(d.bits(), 0b101u);
  EXPECT_TRUE(d.occupied(0));
  EXPECT_FALSE(d.occupied(1));
  EXPECT_EQ(d.to_string(), "00000101");
  EXPECT_EQ(d.n_qubits(), 8);
  EXPECT_THROW(Determinant::from_string("0102"), std::invalid_argument);
  EXPECT_THROW(Determinant(0b100, 2), std::invalid_argument);
}

TEST(Determinant, QuantumNumbersUseInterleavedSpins) {
  const auto d = Determinant::from_string("0111");  // 0a 0b 1a
  EXPECT_EQ(particle_number(d), 3);
  EXPECT_EQ(two_sz(d), 1);
  EXPECT_TRUE(in_sector(d, Sector{3, 1}));
}

TEST(Determinant, OrderingMatchesPrintedStrings) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const Determinant a(rng() & 0xFFF, 12), b(rng() & 0xFFF, 12);
    EXPECT_EQ(a < b, a.to_string() < b.to_string());
  }
}

TEST(Determinant, SectorEnumerationCountsAndOrder) {
  const auto dets = sector_determinants(4, Sector{4, 0});
  EXPECT_EQ(dets.size(), 36u);
  EXPECT_TRUE(std::is_sorted(dets.begin(), dets.end()));
  for (const auto& d : dets) EXPECT_TRUE(in_sector(d, Sector{4, 0}));
  EXPECT_EQ(sector_determinants(5, Sector{6, 0}).size(), 100u);
  EXPECT_EQ(sector_determinants(8, Sector{8, 0}).size(), 4900u);
  EXPECT_TRUE(sector_determinants(2, Sector{3, 0}).empty());
}

TEST(Determinant, HartreeFockFillsLowestOrbitals) {
  EXPECT_EQ(hartree_fock_determinant(4, Sector{4, 0}).to_string(), "00001111");
  EXPECT_EQ(hartree_fock_determinant(3, Sector{3, 1}).to_string(), "000111");
  EXPECT_THROW(hartree_fock_determinant(2, Sector{6, 0}), std::invalid_argument);
}

TEST(SlaterCondon, HartreeFockEnergyMatchesOracle) {
  for (const char* sys : {"h2", "h4", "h6", "h8", "lih", "h2o", "h2o_5o6e"}) {
    const auto mol = load(sys);
    const auto hf = hartree_fock_determinant(mol.n_orbitals, mol.reference_sector());
    EXPECT_NEAR(slater_condon(hf, hf, mol), oracle(sys)["hf_determinant_energy"].get<double>(), 1e-9) << sys;
  }
}

TEST(SlaterCondon, AgreesWithSecondQuantizedOracleOnWholeSectors) {
  for (const char* sys : {"h2", "h4"}) {
    const auto mol = load(sys);
    const auto h = testing::fock_hamiltonian(mol);
    const Eigen::MatrixXd dense(h);
    for (int n = 1; n <= mol.n_qubits(); ++n) {
      for (int tsz = -n; tsz <= n; tsz += 2) {
        const Sector s{n, tsz};
        if (s.n_alpha() > mol.n_orbitals || s.n_beta() > mol.n_orbitals) continue;
        for (const auto& x : sector_determinants(mol.n_orbitals, s))
          for (const auto& y : sector_determinants(mol.n_orbitals, s))
            ASSERT_NEAR(slater_condon(x, y, mol), dense(x.bits(), y.bits()), 1e-12)
                << sys << " " << x.to_string() << " " << y.to_string();
      }
    }
  }
}

TEST(SlaterCondon, HermitianAndZeroBeyondDoubles) {
  const auto mol = load("h2o_5o6e");
  std::mt19937_64 rng(2);
  const auto dets = sector_determinants(mol.n_orbitals, mol.reference_sector());
  for (int t = 0; t < 2000; ++t) {
    const auto& x = dets[rng() % dets.size()];
    const auto& y = dets[rng() % dets.size()];
    EXPECT_NEAR(slater_condon(x, y, mol), slater_condon(y, x, mol), 1e-14);
    if (excitation_degree(x, y) > 2) EXPECT_EQ(slater_condon(x, y, mol), 0.0);
  }
  EXPECT_THROW(slater_condon(Determinant(0b11, 4), Determinant(0b1, 4), mol), std::invalid_argument);
}

TEST(ConnectedDeterminants, ExactlyTheSinglesAndDoubles) {
  const auto d = Determinant::from_string("00001111");
  const auto conn = connected_determinants(d, true);
  std::set<Determinant> got(conn.begin(), conn.end());
  EXPECT_EQ(got.size(), conn.size());
  std::set<Determinant> want;
  for (const auto& y : sector_determinants(4, Sector{4, 0})) {
    const int deg = excitation_degree(d, y);
    if (deg == 1 || deg == 2) want.insert(y);
  }
  EXPECT_EQ(got, want);
  // Without the Sz restriction, spin-flipping moves appear too.
  EXPECT_GT(connected_determinants(d, false).size(), conn.size());
}

}  // namespace
}  // namespace qsci
