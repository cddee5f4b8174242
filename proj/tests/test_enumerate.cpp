// Copyright 2026 The coalstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <set>

#include <gtest/gtest.h>

#include "coalstab/coalstab.hpp"

using namespace coalstab;

namespace {

const std::size_t kBell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};

template <class Stream>
auto drain(Stream stream) {
  std::vector<typename decltype(stream.next())::value_type> out;
  while (auto x = stream.next()) out.push_back(*x);
  return out;
}

}  // namespace

TEST(PartitionStream, BellCountsDistinctAndCovering) {
  for (int n = 1; n <= 7; ++n) {
    const auto parts = drain(enumerate_partitions(n, Coalition::grand(n)));
    EXPECT_EQ(parts.size(), kBell[n]) << n;
    std::set<Collection> distinct(parts.begin(), parts.end());
    EXPECT_EQ(distinct.size(), parts.size());
    for (const auto& c : parts) EXPECT_TRUE(c.covers_all());
  }
}

TEST(PartitionStream, SmallCases) {
  EXPECT_EQ(drain(enumerate_partitions(1, Coalition::grand(1))).size(), 1u);
  EXPECT_EQ(drain(enumerate_partitions(2, Coalition::grand(2))).size(), 2u);
  EXPECT_EQ(drain(enumerate_partitions(3, Coalition::grand(3))).size(), 5u);
  EXPECT_EQ(drain(enumerate_partitions(4, Coalition::grand(4))).size(), 15u);
}

TEST(PartitionStream, OfASubsetCoversExactlyThatSubset) {
  const Coalition s{2, 4, 5, 7};
  const auto parts = drain(enumerate_partitions(8, s));
  EXPECT_EQ(parts.size(), kBell[4]);
  for (const auto& c : parts) EXPECT_EQ(c.cover(), s);
}

TEST(PartitionStream, ResetRestarts) {
  auto stream = enumerate_partitions(4, Coalition::grand(4));
  const auto first = stream.next();
  while (stream.next()) {
  }
  stream.reset();
  EXPECT_EQ(stream.next(), first);
}

TEST(PartitionStream, IsLazyAtTheCap) {
  auto stream = enumerate_partitions(kPartitionEnumerationCap, Coalition::grand(kPartitionEnumerationCap));
  for (int i = 0; i < 1000; ++i) ASSERT_TRUE(stream.next().has_value());
}

TEST(CollectionStream, CountsMatchBellOfNPlusOne) {
  EXPECT_EQ(drain(enumerate_collections(1)).size(), 2u);
  EXPECT_EQ(drain(enumerate_collections(2)).size(), 5u);
  EXPECT_EQ(drain(enumerate_collections(3)).size(), 15u);
  for (int n = 1; n <= 6; ++n) {
    const auto all = drain(enumerate_collections(n));
    EXPECT_EQ(all.size(), kBell[n + 1]);
    std::set<Collection> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
  }
}

TEST(CollectionStream, ListsTheEmptyCollection) {
  const auto all = drain(enumerate_collections(3));
  EXPECT_TRUE(all.front().empty());
}

TEST(CollectionStream, IsExactlyThePartitionsOfEverySubset) {
  // Independent count: each collection is a partition of its cover.
  for (int n = 1; n <= 5; ++n) {
    std::set<Collection> expected;
    expected.insert(Collection(n, {}));
    for (Coalition::mask_type m = 1; m < (Coalition::mask_type{1} << n); ++m) {
      auto stream = enumerate_partitions(n, Coalition(m));
      while (auto c = stream.next()) expected.insert(*c);
    }
    const auto all = drain(enumerate_collections(n));
    EXPECT_EQ(std::set<Collection>(all.begin(), all.end()), expected);
  }
}

TEST(HomogeneousStream, EqualsFilteredEnumeration) {
  for (int n = 1; n <= 6; ++n) {
    const auto partitions = all_partitions(n);
    for (const auto& p : partitions) {
      std::set<Partition> expected;
      for (const auto& q : partitions)
        if (is_homogeneous(q, p)) expected.insert(q);
      const auto got = drain(enumerate_homogeneous_partitions(p));
      std::set<Partition> distinct(got.begin(), got.end());
      EXPECT_EQ(distinct.size(), got.size()) << p.str();
      EXPECT_EQ(distinct, expected) << p.str();
    }
  }
}

TEST(HomogeneousStream, PairsOfFour) {
  // Lone blocks split freely (2 ways each) or the two merge: 2*2 + 1.
  const Partition p(4, {Coalition{1, 2}, Coalition{3, 4}});
  EXPECT_EQ(drain(enumerate_homogeneous_partitions(p)).size(), 5u);
}

TEST(ForEachPartition, StopsEarly) {
  int seen = 0;
  for_each_partition(5, [&](const Partition&) { return ++seen < 3; });
  EXPECT_EQ(seen, 3);
}

TEST(ForEachPartition, RespectsCap) {
  EXPECT_THROW(all_partitions(kPartitionEnumerationCap + 1), cap_exceeded);
  EXPECT_THROW(drain(enumerate_collections(kCollectionEnumerationCap + 1)), cap_exceeded);
}
