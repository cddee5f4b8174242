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

#include <random>

#include <gtest/gtest.h>

#include "coalstab/coalstab.hpp"

using namespace coalstab;

namespace {

Coalition swap23(Coalition s) {
  Coalition out;
  for (int p : s.players()) out.insert(p == 2 ? 3 : p == 3 ? 2 : p);
  return out;
}

CityConfig random_city_config(std::mt19937_64& rng, int n) {
  // Random assignment of stores to at most three cities.
  std::vector<std::vector<int>> groups(3);
  for (int j = 1; j <= n; ++j) groups[rng() % 3].push_back(j);
  std::vector<Coalition> blocks;
  for (const auto& grp : groups)
    if (!grp.empty()) blocks.push_back(Coalition::from_players(grp));
  Partition cities(n, blocks);
  std::vector<Value> a, r;
  for (std::size_t i = 0; i < cities.size(); ++i) {
    a.push_back(Value(1 + static_cast<std::int64_t>(rng() % 9)));
    r.push_back(Value(1 + static_cast<std::int64_t>(rng() % 8), 10));
  }
  return {cities, a, r, Value(11 + static_cast<std::int64_t>(rng() % 20), 10), std::nullopt};
}

}  // namespace

TEST(PaperExample, ValueTables) {
  EXPECT_EQ(paper_example("exa-a")(Coalition{1, 2, 3}), Value(6));
  EXPECT_EQ(paper_example("exa-a")(Coalition{2, 3}), Value(5));
  EXPECT_EQ(paper_example("exa-2")(Coalition{1, 3}), Value(3));
  EXPECT_EQ(paper_example("exa-2")(Coalition{1, 2, 3, 4}), Value(6));
  EXPECT_EQ(paper_example("exa-miss1")(Coalition{1, 3}), Value(2));
  EXPECT_EQ(paper_example("exa-miss1")(Coalition{1, 2}), Value(3));
  EXPECT_EQ(paper_example("exa-1")(Coalition{1, 3}), Value(2));
  EXPECT_EQ(paper_example("exa-1")(Coalition{1, 2, 3}), Value(0));
  EXPECT_EQ(paper_example("exa-miss")(Coalition{2, 3, 4}), Value(3));
  EXPECT_THROW(paper_example("exa-9"), std::invalid_argument);
  for (const auto& name : paper_example_names()) EXPECT_NO_THROW(paper_example(name));
}

TEST(GeneralizedOdd, SmallestCaseIsExaMissUpToRelabelling) {
  const Game g = generalized_odd_game(2);
  const Game miss = paper_example("exa-miss");
  for_each_nonempty_subset(Coalition::grand(4), [&](Coalition s) { EXPECT_EQ(g(s), miss(swap23(s))) << s.str(); });
}

TEST(GeneralizedOdd, Values) {
  const Game g = generalized_odd_game(3);
  EXPECT_EQ(g.n(), 6);
  EXPECT_EQ(g(Coalition{1, 3, 5}), Value(4));
  EXPECT_EQ(g(Coalition{1, 3}), Value(2));
  EXPECT_THROW(generalized_odd_game(1), std::invalid_argument);
  EXPECT_THROW(generalized_odd_game(11), cap_exceeded);
}

TEST(GeneralizedOdd, WelfareOfNamedPartitions) {
  for (int half = 2; half <= 6; ++half) {
    const Game g = generalized_odd_game(half);
    EXPECT_EQ(social_welfare(g, odd_even_partition(half)), Value(2 * half + 1));
    EXPECT_EQ(social_welfare(g, pairs_partition(half)), Value(2 * half));
    EXPECT_EQ(optimal_partition(g).optimum, Value(2 * half + 1));
  }
}

TEST(PartitionPower, Values) {
  const Partition p(5, {Coalition{1, 2, 3}, Coalition{4, 5}});
  const Game g = partition_power_game(p, 2);
  EXPECT_EQ(g(Coalition{1, 2, 3}), Value(9));
  EXPECT_EQ(g(Coalition{4}), Value(1));
  EXPECT_EQ(g(Coalition{3, 4}), Value(0));
  EXPECT_THROW(partition_power_game(p, 0), std::invalid_argument);
}

TEST(PartitionPower, LinearCaseIsAdditiveWithinBlocks) {
  const Partition p(5, {Coalition{1, 2, 3}, Coalition{4, 5}});
  const Game g = partition_power_game(p, 1);
  for_each_nonempty_subset(Coalition::grand(5), [&](Coalition s) {
    EXPECT_EQ(g(s), is_compatible(s, p) ? Value(s.size()) : Value(0));
  });
  EXPECT_TRUE(check_dc(g, p).stable);
  EXPECT_FALSE(check_dc_strict(g, p).stable);
  for (int m = 2; m <= 4; ++m) EXPECT_TRUE(check_dc_strict(partition_power_game(p, m), p).stable);
}

TEST(Transportation, WorkedValues) {
  const Partition cities(4, {Coalition{1, 2}, Coalition{3, 4}});
  const CityConfig cfg{cities, {Value(6), Value(5)}, {Value(1, 2), Value(1, 3)}, Value(2), std::nullopt};
  const TransportationGame tg = transportation_game(cfg);
  EXPECT_EQ(tg.cost(Coalition{1}), Value(6));
  EXPECT_EQ(tg.game(Coalition{1}), Value(0));
  EXPECT_EQ(tg.cost(Coalition{3}), Value(5));
  EXPECT_EQ(tg.cost(Coalition{1, 2}), Value(6));
  EXPECT_EQ(tg.game(Coalition{1, 2}), Value(6));
  // Per-store costs 6 and 5; the worse one, doubled, over two stores.
  EXPECT_EQ(tg.cost(Coalition{1, 3}), Value(24));
  EXPECT_EQ(tg.game(Coalition{1, 3}), Value(-13));
  EXPECT_EQ(tg.chains, Partition(4, {Coalition{1, 3}, Coalition{2, 4}}));
}

TEST(Transportation, InvalidConfigs) {
  const Partition cities(2, {Coalition{1}, Coalition{2}});
  auto make = [&](Value a, Value r, Value mu) { return CityConfig{cities, {a, Value(1)}, {r, Value(1, 2)}, mu, {}}; };
  EXPECT_THROW(transportation_game(make(Value(0), Value(1, 2), Value(2))), std::invalid_argument);
  EXPECT_THROW(transportation_game(make(Value(1), Value(1), Value(2))), std::invalid_argument);
  EXPECT_THROW(transportation_game(make(Value(1), Value(0), Value(2))), std::invalid_argument);
  EXPECT_THROW(transportation_game(make(Value(1), Value(1, 2), Value(1))), std::invalid_argument);
  EXPECT_THROW(transportation_game(CityConfig{cities, {Value(1)}, {Value(1, 2)}, Value(2), {}}), std::invalid_argument);
}

TEST(Transportation, CostAssumptionsAndStrictStability) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + trial % 6;
    const CityConfig cfg = random_city_config(rng, n);
    const TransportationGame tg = transportation_game(cfg);
    const Game& g = tg.game;
    for (Coalition city : cfg.cities) {
      detail::for_each_disjoint_pair(city, [&](Coalition a, Coalition b) {
        EXPECT_LT(tg.cost(a | b), tg.cost(a) + tg.cost(b));
        EXPECT_LT(g(a) + g(b), g(a | b));
        return true;
      });
    }
    for_each_nonempty_subset(Coalition::grand(n), [&](Coalition t) {
      if (is_compatible(t, cfg.cities)) return;
      Value pieces;
      for (Coalition c : cfg.cities) pieces += g(c & t);
      EXPECT_GT(pieces, g(t));
    });
    EXPECT_TRUE(check_dc_strict(g, cfg.cities).stable);
  }
}

TEST(RandomGame, ClassesAreCertifiedAndDeterministic) {
  for (auto cls : {GameClass::Additive, GameClass::Superadditive, GameClass::StrictlySuperadditive, GameClass::General}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const GeneratorSpec spec{cls, 5, -4, 9, 3, seed};
      const Game a = random_game(spec);
      EXPECT_EQ(a, random_game(spec));
      if (cls == GameClass::Additive) EXPECT_TRUE(is_additive(a));
      if (cls == GameClass::Superadditive) EXPECT_TRUE(is_superadditive(a));
      if (cls == GameClass::StrictlySuperadditive) EXPECT_TRUE(is_superadditive(a, true));
      EXPECT_TRUE(corollary_shortcuts(a).grand_coalition_stable || cls == GameClass::General);
    }
  }
  EXPECT_FALSE(random_game({GameClass::General, 4, 0, 100, 1, 1}) == random_game({GameClass::General, 4, 0, 100, 1, 2}));
}

TEST(RandomGame, ClassNamesRoundTrip) {
  for (auto cls : {GameClass::Additive, GameClass::Superadditive, GameClass::StrictlySuperadditive, GameClass::General})
    EXPECT_EQ(parse_game_class(to_string(cls)), cls);
  EXPECT_THROW(parse_game_class("convex"), std::invalid_argument);
}

TEST(RandomGame, Caps) {
  EXPECT_THROW(random_game({GameClass::General, kRandomGameCap + 1, 0, 1, 1, 0}), cap_exceeded);
  EXPECT_THROW(random_game({GameClass::General, 3, 2, 1, 1, 0}), std::invalid_argument);
}

TEST(RuleGame, MemoizesConsistently) {
  int calls = 0;
  const Game g = Game::from_rule(4, [&calls](Coalition s) {
    ++calls;
    return Value(s.size() * 2);
  });
  EXPECT_EQ(g(Coalition{1, 2}), Value(4));
  EXPECT_EQ(g(Coalition{1, 2}), Value(4));
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(g.table().size(), 16u);
}
