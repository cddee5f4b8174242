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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "coalstab/coalstab.hpp"

using namespace coalstab;

namespace {

Partition P(int n, std::vector<Coalition> blocks) { return Partition(n, std::move(blocks)); }
Collection C(int n, std::vector<Coalition> blocks) { return Collection(n, std::move(blocks)); }

}  // namespace

TEST(Value, ParsesIntegersFractionsAndDecimalsExactly) {
  EXPECT_EQ(Value::parse("7"), Value(7));
  EXPECT_EQ(Value::parse("-3"), Value(-3));
  EXPECT_EQ(Value::parse("6/4"), Value(3, 2));
  EXPECT_EQ(Value::parse("2.5"), Value(5, 2));
  EXPECT_EQ(Value::parse("-0.125"), Value(-1, 8));
  EXPECT_EQ(Value::parse(".5"), Value(1, 2));
  EXPECT_EQ(Value::parse("3."), Value(3));
  EXPECT_EQ(Value::parse("0.1") + Value::parse("0.2"), Value::parse("0.3"));
}

TEST(Value, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "--1", "1/x", "."})
    EXPECT_THROW(Value::parse(bad), parse_error) << bad;
}

TEST(Value, NormalizedAndPrinted) {
  EXPECT_EQ(Value(4, -6).str(), "-2/3");
  EXPECT_EQ(Value(10, 5).str(), "2");
  EXPECT_EQ(Value(1, 3).pow(3), Value(1, 27));
  EXPECT_LT(Value(1, 3), Value(1, 2));
  EXPECT_FALSE(Value(1, 2) < Value(2, 4));
}

TEST(Coalition, BitLayoutAndPrinting) {
  Coalition c{1, 3};
  EXPECT_EQ(c.bits(), 0b101u);
  EXPECT_EQ(c.size(), 2);
  EXPECT_EQ(c.least(), 1);
  EXPECT_EQ(c.str(), "{1,3}");
  EXPECT_EQ(Coalition().str(), "{}");
  EXPECT_EQ(Coalition::grand(4).str(), "{1,2,3,4}");
  EXPECT_THROW(Coalition({0}), std::invalid_argument);
  EXPECT_THROW(Coalition({21}), std::invalid_argument);
}

TEST(Coalition, SubsetWalkVisitsEachNonemptySubsetOnce) {
  std::vector<Coalition> seen;
  for_each_nonempty_subset(Coalition{2, 4, 5}, [&](Coalition s) { seen.push_back(s); });
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  std::size_t proper = 0;
  for_each_proper_subset(Coalition{2, 4, 5}, [&](Coalition) { ++proper; });
  EXPECT_EQ(proper, 6u);
  std::size_t none = 0;
  for_each_nonempty_subset(Coalition(), [&](Coalition) { ++none; });
  EXPECT_EQ(none, 0u);
}

TEST(Collection, ValidatesBlocks) {
  EXPECT_THROW(C(3, {Coalition{1, 2}, Coalition{2, 3}}), std::invalid_argument);
  EXPECT_THROW(C(3, {Coalition{1}, Coalition()}), std::invalid_argument);
  EXPECT_THROW(C(3, {Coalition{4}}), std::invalid_argument);
  EXPECT_THROW(P(3, {Coalition{1, 2}}), std::invalid_argument);
  EXPECT_NO_THROW(C(3, {}));
  EXPECT_THROW(PlayerCount(0), std::invalid_argument);
  EXPECT_THROW(PlayerCount(21), std::invalid_argument);
}

TEST(Collection, CanonicalFormIgnoresBlockOrder) {
  std::vector<Coalition> blocks = {Coalition{4, 5}, Coalition{1, 6}, Coalition{2}, Coalition{3}};
  const Partition reference(6, blocks);
  EXPECT_EQ(reference.str(), "{{1,6},{2},{3},{4,5}}");
  std::sort(blocks.begin(), blocks.end());
  do {
    Partition p(6, blocks);
    EXPECT_EQ(p, reference);
    EXPECT_EQ(Partition(6, p.blocks()), p);  // idempotent
  } while (std::next_permutation(blocks.begin(), blocks.end()));
}

TEST(Frame, OfAPartitionIsTheFramingPartition) {
  const Partition p = P(4, {Coalition{1, 3}, Coalition{2, 4}});
  const Partition c = P(4, {Coalition{1, 2}, Coalition{3}, Coalition{4}});
  EXPECT_EQ(frame(c, p), p.collection());
}

TEST(Frame, OfTheEmptyCollectionIsEmpty) {
  EXPECT_TRUE(frame(C(4, {}), P(4, {Coalition{1, 2, 3, 4}})).empty());
}

TEST(Frame, HandEvaluatedExample) {
  // {1,3} and {2,4} intersected with {1,2,3}.
  const auto framed = frame(C(4, {Coalition{1, 2}, Coalition{3}}), P(4, {Coalition{1, 3}, Coalition{2, 4}}));
  EXPECT_EQ(framed, C(4, {Coalition{1, 3}, Coalition{2}}));
}

TEST(Frame, PlayerCountMismatch) {
  try {
    frame(C(3, {Coalition{1}}), Partition::singletons(4));
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "player-count mismatch");
  }
}

TEST(Frame, InvariantsOverAllCollectionsAndPartitions) {
  for (int n = 1; n <= 5; ++n) {
    const auto partitions = all_partitions(n);
    for (const auto& p : partitions) {
      CollectionStream stream(n);
      while (auto c = stream.next()) {
        const Collection f = frame(*c, p);
        EXPECT_EQ(f.cover(), c->cover());
        if (c->covers_all()) EXPECT_EQ(f, p.collection());
        if (c->is_subcollection_of(p)) EXPECT_EQ(f, *c);
      }
    }
  }
}

TEST(SocialWelfare, Examples) {
  const Game exa_a = paper_example("exa-a");
  EXPECT_EQ(social_welfare(exa_a, C(3, {Coalition{1, 2}, Coalition{3}})), Value(7));
  EXPECT_EQ(social_welfare(exa_a, C(3, {})), Value(0));
  const Game exa_2 = paper_example("exa-2");
  EXPECT_EQ(social_welfare(exa_2, C(4, {Coalition{1, 2}, Coalition{3, 4}})), Value(8));
}

TEST(SocialWelfare, AdditiveOverDisjointConcatenation) {
  std::mt19937_64 rng(7);
  const Game g = random_game({GameClass::General, 5, -5, 9, 3, 11});
  for (int trial = 0; trial < 200; ++trial) {
    // Random labelling of players: 0 = unused, 1 = left collection, 2 = right.
    std::vector<Coalition> left, right;
    std::vector<std::vector<int>> groups(6);
    for (int pl = 1; pl <= 5; ++pl) groups[rng() % 6].push_back(pl);
    for (std::size_t gi = 1; gi < groups.size(); ++gi) {
      if (groups[gi].empty()) continue;
      (gi % 2 ? left : right).push_back(Coalition::from_players(groups[gi]));
    }
    std::vector<Coalition> both = left;
    both.insert(both.end(), right.begin(), right.end());
    EXPECT_EQ(social_welfare(g, C(5, both)), social_welfare(g, C(5, left)) + social_welfare(g, C(5, right)));
  }
}

TEST(ModifiedSocialWelfare, Examples) {
  const Game g = paper_example("exa-miss");
  const Partition p = P(4, {Coalition{1, 2}, Coalition{3, 4}});
  // A partition C frames to P itself.
  EXPECT_EQ(modified_social_welfare(g, P(4, {Coalition{1, 3}, Coalition{2, 4}}), p), social_welfare(g, p));
  EXPECT_EQ(modified_social_welfare(g, P(4, {Coalition{1, 3}, Coalition{2, 4}}), p), Value(5));
  // A sub-collection of P frames to itself.
  EXPECT_EQ(modified_social_welfare(g, C(4, {Coalition{3, 4}}), p), Value(2));
  // {1,3} in the frame of P is {{1},{3}}.
  EXPECT_EQ(modified_social_welfare(g, C(4, {Coalition{1, 3}}), p), Value(2));
}

TEST(Compatibility, Examples) {
  const Partition p = P(3, {Coalition{1, 2}, Coalition{3}});
  EXPECT_TRUE(is_compatible(Coalition{1, 2}, p));
  EXPECT_FALSE(is_compatible(Coalition{2, 3}, p));
  for (int j = 1; j <= 3; ++j) EXPECT_TRUE(is_compatible(Coalition::singleton(j), p));
}

TEST(Homogeneity, Examples) {
  const Partition p = P(4, {Coalition{1, 2}, Coalition{3, 4}});
  EXPECT_TRUE(is_homogeneous(p, p));
  EXPECT_TRUE(is_homogeneous(Partition::grand(4), p));
  EXPECT_FALSE(is_homogeneous(P(4, {Coalition{1, 3}, Coalition{2, 4}}), p));
  // A block that contains one P-block and part of another is not a union of
  // blocks.
  EXPECT_FALSE(is_homogeneous(P(4, {Coalition{1, 2, 3}, Coalition{4}}), p));
  EXPECT_TRUE(is_homogeneous(P(4, {Coalition{1}, Coalition{2}, Coalition{3, 4}}), p));
}
