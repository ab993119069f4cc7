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

#include "qsci/measurement.hpp"
#include "qsci/pauli.hpp"
#include "test_support.hpp"

namespace qsci {
namespace {

StateVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> amps(std::size_t{1} << n);
  for (auto& x : amps) x = {g(rng), g(rng)};
  auto s = StateVector::from_amplitudes(n, amps);
  s.normalize();
  return s;
}

TEST(QwcGroups, PartitionNonIdentityTermsIntoCompatibleSets) {
  const auto h = jordan_wigner(testing::load("h4"));
  const auto groups = qwc_groups(h);
  std::vector<int> seen(h.size(), 0);
  for (const auto& g : groups) {
    for (std::size_t a : g.members) {
      ++seen[a];
      EXPECT_TRUE(qubit_wise_commute(h.terms()[a].string, g.basis));
      for (std::size_t b : g.members) EXPECT_TRUE(qubit_wise_commute(h.terms()[a].string, h.terms()[b].string));
    }
  }
  for (std::size_t i = 0; i < h.size(); ++i) EXPECT_EQ(seen[i], h.terms()[i].string.is_identity() ? 0 : 1);
  EXPECT_LT(groups.size(), h.size());
  EXPECT_EQ(groups_to_json(h, groups).size(), groups.size());
}

TEST(Allocation, ProportionalAndExact) {
  const std::vector<double> sigmas{3.0, 1.0, 0.0, 1.0};
  const auto a = allocate_single(sigmas, 1001);
  std::uint64_t sum = 0;
  for (auto s : a.shots) sum += s;
  EXPECT_EQ(sum, 1001u);
  EXPECT_EQ(a.shots[2], 0u);
  EXPECT_NEAR(double(a.shots[0]), 600.6, 1.0);
  EXPECT_NEAR(double(a.shots[1]), 200.2, 1.0);
  EXPECT_THROW(allocate_single(std::vector<double>{0.0, 0.0}, 10), std::invalid_argument);
  EXPECT_THROW(allocate_single(std::vector<double>{1.0, 1.0, 1.0}, 2), std::invalid_argument);
  EXPECT_THROW(allocate_single(std::vector<double>{-1.0}, 2), std::invalid_argument);
  Eigen::MatrixXd multi(2, 2);
  multi << 3.0, 0.0, 4.0, 1.0;
  EXPECT_EQ(allocate_multi(multi, 6).shots, (std::vector<std::uint64_t>{5, 1}));
}

TEST(Sigmas, VanishOnEigenstatesOfDiagonalGroups) {
  const auto h = jordan_wigner(testing::load("h2"));
  const auto groups = qwc_groups(h);
  const auto s = StateVector::from_amplitudes(4, [] {
    std::vector<cplx> a(16, 0.0);
    a[0b0011] = 1.0;
    return a;
  }());
  const auto sig = exact_sigmas(s, h, groups);
  for (std::size_t l = 0; l < groups.size(); ++l)
    if (groups[l].basis.x() == 0) EXPECT_NEAR(sig[l], 0.0, 1e-12);
}

TEST(Estimator, UnbiasedWithConsistentStandardError) {
  const auto mol = testing::load("h2");
  const auto h = jordan_wigner(mol);
  const auto groups = qwc_groups(h);
  const auto s = random_state(4, 5);
  const double exact = expectation(s, h);
  const auto alloc = allocate_single(exact_sigmas(s, h, groups), 2000);
  const int trials = 200;
  double mean = 0.0, sq = 0.0, se = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto e = estimate_sampling(s, h, groups, alloc, 100 + t);
    EXPECT_EQ(e.shots, 2000u);
    mean += e.value;
    sq += e.value * e.value;
    se += e.standard_error;
  }
  mean /= trials;
  const double spread = std::sqrt(sq / trials - mean * mean);
  se /= trials;
  EXPECT_NEAR(mean, exact, 4.0 * spread / std::sqrt(double(trials)));
  EXPECT_NEAR(se / spread, 1.0, 0.25);
  const auto again = estimate_sampling(s, h, groups, alloc, 100);
  EXPECT_EQ(again.value, estimate_sampling(s, h, groups, alloc, 100).value);
}

TEST(Estimator, TwoRoundUsesWholeBudget) {
  const auto h = jordan_wigner(testing::load("h2"));
  const auto groups = qwc_groups(h);
  const auto s = random_state(4, 6);
  const auto e = estimate_two_round(s, h, groups, 4000, 0.25, 3);
  EXPECT_EQ(e.shots, 4000u);
  EXPECT_NEAR(e.value, expectation(s, h), 6.0 * e.standard_error + 1e-12);
}

}  // namespace
}  // namespace qsci
