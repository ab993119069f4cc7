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

#include "qsci/selection.hpp"

namespace qsci {
namespace {

SampleCounts make_counts(int n, std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> items) {
  SampleCounts c;
  c.n_qubits = n;
  for (auto [x, k] : items) c.add(x, k);
  return c;
}

std::vector<std::uint64_t> bits(const SelectionResult& s) {
  std::vector<std::uint64_t> out;
  for (const auto& d : s.configs) out.push_back(d.bits());
  return out;
}

TEST(SelectTopR, OrdersByCountThenBitString) {
  const auto c = make_counts(4, {{0b0011, 5}, {0b1100, 7}, {0b0101, 5}, {0b1010, 1}});
  const auto s = select_top_r(c, 3);
  EXPECT_EQ(bits(s), (std::vector<std::uint64_t>{0b1100, 0b0011, 0b0101}));
  EXPECT_EQ(s.frequencies, (std::vector<double>{7, 5, 5}));
  EXPECT_EQ(s.shortfall(), 0u);
  EXPECT_THROW(select_top_r(c, 0), std::invalid_argument);
}

TEST(SelectTopR, PostSelectionCountsDiscardedShots) {
  const auto c = make_counts(4, {{0b0011, 5}, {0b0111, 9}, {0b0001, 2}, {0b1001, 4}});
  const auto s = select_top_r(c, 10, Sector{2, 0});
  EXPECT_EQ(bits(s), (std::vector<std::uint64_t>{0b0011, 0b1001}));
  EXPECT_EQ(s.discarded_by_postselect, 11u);
  EXPECT_EQ(s.shortfall(), 8u);
  for (const auto& d : s.configs) EXPECT_TRUE(in_sector(d, Sector{2, 0}));
}

TEST(SelectByThreshold, KeepsFrequenciesAtOrAboveEpsilon) {
  auto c = make_counts(4, {{0b0011, 50}, {0b1100, 30}, {0b0101, 20}});
  c.total_shots = 100;
  EXPECT_EQ(bits(select_by_threshold(c, 0.3)), (std::vector<std::uint64_t>{0b0011, 0b1100}));
  EXPECT_EQ(select_by_threshold(c, 0.2).size(), 3u);
  EXPECT_THROW(select_by_threshold(c, 0.0), std::invalid_argument);
  EXPECT_THROW(select_by_threshold(c, 1.5), std::invalid_argument);
}

TEST(SelectAll, IsTopRWithoutCap) {
  const auto c = make_counts(6, {{1, 3}, {2, 3}, {4, 9}, {8, 1}, {16, 2}});
  EXPECT_EQ(bits(select_all(c)), bits(select_top_r(c, 5)));
  EXPECT_EQ(select_all(c).requested, 0u);
}

TEST(IdealizedTopR, RanksByProbability) {
  std::vector<cplx> a(8, 0.0);
  a[3] = 0.6;
  a[5] = cplx(0.0, -0.6);
  a[6] = std::sqrt(0.28);
  const auto s = StateVector::from_amplitudes(3, a);
  const auto sel = idealized_top_r(s, 2, {}, 1000.0);
  EXPECT_EQ(bits(sel), (std::vector<std::uint64_t>{3, 5}));
  EXPECT_NEAR(sel.frequencies[0], 360.0, 1e-9);
  EXPECT_EQ(idealized_top_r(s, 10).size(), 3u);  // zero amplitudes never selected
}

TEST(Truncated, KeepsPrefixAndRecordsRequest) {
  const auto s = select_all(make_counts(4, {{1, 4}, {2, 3}, {4, 2}})).truncated(2);
  EXPECT_EQ(bits(s), (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(s.requested, 2u);
  EXPECT_EQ(s.to_json()["configs"][0]["config"], "0001");
}

TEST(Merge, RoundRobinAndConcatenate) {
  const auto a = select_all(make_counts(4, {{1, 9}, {2, 8}, {4, 7}}));
  const auto b = select_all(make_counts(4, {{2, 9}, {8, 8}, {1, 7}}));
  const std::vector<SelectionResult> both{a, b};
  EXPECT_EQ(bits(merge_subspaces(both, 4, MergeStrategy::kRoundRobin)),
            (std::vector<std::uint64_t>{1, 2, 4, 8}));
  EXPECT_EQ(bits(merge_subspaces(both, 3, MergeStrategy::kConcatenate)),
            (std::vector<std::uint64_t>{1, 2, 4}));
  EXPECT_EQ(merge_subspaces(both, 10, MergeStrategy::kRoundRobin).size(), 4u);
  EXPECT_EQ(merge_subspaces(both, 10, MergeStrategy::kRoundRobin).shortfall(), 6u);
  const std::vector<SelectionResult> none{SelectionResult{}};
  EXPECT_THROW(merge_subspaces(none, 3, MergeStrategy::kRoundRobin), std::invalid_argument);
}

}  // namespace
}  // namespace qsci
