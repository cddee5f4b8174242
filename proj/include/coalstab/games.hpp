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

#pragma once

// Concrete games: the small worked examples, the odd-set counterexample
// family, partition-restricted power games, the store/city transportation
// cost-saving game, and seeded random generators.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "coalstab/errors.hpp"
#include "coalstab/game.hpp"
#include "coalstab/stability.hpp"

namespace coalstab {

inline const std::vector<std::string>& paper_example_names() {
  static const std::vector<std::string> names = {"exa-a", "exa-1", "exa-miss", "exa-2", "exa-miss1"};
  return names;
}

/// The worked examples by name:
///   exa-a     n=3: 2, 5, 6 for |S| = 1, 2, 3 (no Dc-stable partition)
///   exa-1     n=4: v{1,2}=1, v{1,3}=2, else 0 (merge/split outcome not unique)
///   exa-miss  n=4: v{1,2}=3, else |S| (merge/split can miss the optimum)
///   exa-2     n=4: v(N)=6, v{1,2}=v{3,4}=4, v{1,3}=3, else |S|
///   exa-miss1 n=3: v{1,2}=3, else |S|
inline Game paper_example(const std::string& name) {
  const Coalition c12{1, 2}, c13{1, 3}, c34{3, 4};
  if (name == "exa-a")
    return Game::tabulate(3, [](Coalition s) { return Value(s.size() == 1 ? 2 : s.size() == 2 ? 5 : 6); });
  if (name == "exa-1")
    return Game::tabulate(4, [=](Coalition s) { return Value(s == c12 ? 1 : s == c13 ? 2 : 0); });
  if (name == "exa-miss")
    return Game::tabulate(4, [=](Coalition s) { return Value(s == c12 ? 3 : s.size()); });
  if (name == "exa-2")
    return Game::tabulate(4, [=](Coalition s) {
      if (s == Coalition::grand(4)) return Value(6);
      if (s == c12 || s == c34) return Value(4);
      if (s == c13) return Value(3);
      return Value(s.size());
    });
  if (name == "exa-miss1")
    return Game::tabulate(3, [=](Coalition s) { return Value(s == c12 ? 3 : s.size()); });
  throw std::invalid_argument("unknown example '" + name + "'");
}

/// The odd players {1,3,..,2n-1}.
inline Coalition odd_players(int half) {
  Coalition c;
  for (int i = 1; i <= half; ++i) c.insert(2 * i - 1);
  return c;
}

/// On 2n players: v(odds) = n + 1, v(S) = |S| otherwise. {odds, evens} is the
/// unique optimum, while the pairs {2i-1, 2i} are stuck even under transfers
/// and exchanges once n >= 3.
inline Game generalized_odd_game(int half) {
  if (half < 2) throw std::invalid_argument("generalized_odd_game needs n >= 2");
  if (2 * half > kMaxPlayers) throw cap_exceeded("generalized_odd_game players", static_cast<std::size_t>(2 * half), kMaxPlayers);
  const Coalition odds = odd_players(half);
  return Game::from_rule(2 * half, [odds, half](Coalition s) { return Value(s == odds ? half + 1 : s.size()); });
}

/// {odds, evens} of the generalized odd game.
inline Partition odd_even_partition(int half) {
  const Coalition odds = odd_players(half);
  return Partition(2 * half, {odds, Coalition::grand(2 * half) - odds});
}

/// {{1,2},{3,4},...,{2n-1,2n}}.
inline Partition pairs_partition(int half) {
  std::vector<Coalition> blocks;
  for (int i = 1; i <= half; ++i) blocks.push_back(Coalition{2 * i - 1, 2 * i});
  return Partition(2 * half, std::move(blocks));
}

/// v(S) = |S|^m when S lies inside a block of P, 0 otherwise.
inline Game partition_power_game(const Partition& p, int m) {
  if (m < 1) throw std::invalid_argument("partition_power_game needs m >= 1");
  return Game::from_rule(p.n(), [p, m](Coalition s) {
    return is_compatible(s, p) ? Value(s.size()).pow(static_cast<unsigned>(m)) : Value(0);
  });
}

/// Stores grouped by city, with a geometric economy of scale inside a city and
/// a penalty for serving several cities at once.
struct CityConfig {
  Partition cities;
  std::vector<Value> base_cost;  // a_i > 0: cost of serving one store in city i
  std::vector<Value> decay;      // r_i in (0,1): per-store cost ratio per extra store
  Value penalty;                 // mu > 1: cross-city per-store cost multiplier
  std::optional<Partition> chains;

  void validate() const {
    if (base_cost.size() != cities.size() || decay.size() != cities.size())
      throw std::invalid_argument("city config needs one base cost and one decay per city");
    for (const auto& a : base_cost)
      if (a.sign() <= 0) throw std::invalid_argument("base cost must be positive");
    for (const auto& r : decay)
      if (r.sign() <= 0 || r >= Value(1)) throw std::invalid_argument("decay must lie in (0,1)");
    if (penalty <= Value(1)) throw std::invalid_argument("cross-city penalty must exceed 1");
    if (chains && chains->n() != cities.n()) throw std::invalid_argument("chains and cities disagree on n");
  }
};

/// Default chain assignment: the j-th store (ascending) of every city goes to
/// chain j, so each chain spans all cities that are large enough.
inline Partition default_chains(const Partition& cities) {
  std::vector<Coalition> chains;
  for (Coalition city : cities) {
    const auto stores = city.players();
    if (chains.size() < stores.size()) chains.resize(stores.size());
    for (std::size_t j = 0; j < stores.size(); ++j) chains[j].insert(stores[j]);
  }
  return Partition(cities.n(), std::move(chains));
}

struct TransportationGame {
  Game game;
  Game::rule_type cost;
  Partition chains;
};

/// Cost model:
///   S inside city i:  c(S) = a_i |S| r_i^(|S|-1)
///   S across cities:  c(S) = mu |S| max_i c(P_i n S) / |P_i n S|
/// and v(S) = sum_{j in S} c({j}) - c(S), the saving over solo service.
inline TransportationGame transportation_game(const CityConfig& cfg) {
  cfg.validate();
  const Partition cities = cfg.cities;
  const std::vector<Value> a = cfg.base_cost;
  const std::vector<Value> r = cfg.decay;
  const Value mu = cfg.penalty;

  // Per-store cost of k stores served together inside city i.
  auto per_store = [a, r](std::size_t i, int k) { return a[i] * r[i].pow(static_cast<unsigned>(k - 1)); };

  Game::rule_type cost = [cities, per_store, mu](Coalition s) {
    if (s.empty()) return Value(0);
    std::optional<Value> worst;
    int touched = 0;
    for (std::size_t i = 0; i < cities.size(); ++i) {
      const Coalition piece = cities[i] & s;
      if (piece.empty()) continue;
      ++touched;
      Value ps = per_store(i, piece.size());
      if (!worst || ps > *worst) worst = std::move(ps);
    }
    const Value size(s.size());
    return touched == 1 ? size * *worst : mu * size * *worst;
  };

  std::vector<Value> solo(static_cast<std::size_t>(cities.n()) + 1);
  for (int j = 1; j <= cities.n(); ++j) solo[static_cast<std::size_t>(j)] = cost(Coalition::singleton(j));

  Game game = Game::from_rule(cities.n(), [cost, solo](Coalition s) {
    Value total;
    for (int j : s.players()) total += solo[static_cast<std::size_t>(j)];
    return total - cost(s);
  });
  return {std::move(game), std::move(cost), cfg.chains ? *cfg.chains : default_chains(cities)};
}

enum class GameClass { Additive, Superadditive, StrictlySuperadditive, General };

inline std::string to_string(GameClass c) {
  switch (c) {
    case GameClass::Additive: return "additive";
    case GameClass::Superadditive: return "superadditive";
    case GameClass::StrictlySuperadditive: return "strictly_superadditive";
    case GameClass::General: return "general";
  }
  return "?";
}

inline GameClass parse_game_class(const std::string& s) {
  if (s == "additive") return GameClass::Additive;
  if (s == "superadditive") return GameClass::Superadditive;
  if (s == "strictly_superadditive") return GameClass::StrictlySuperadditive;
  if (s == "general") return GameClass::General;
  throw std::invalid_argument("unknown game class '" + s + "'");
}

/// Seeded random game. Raw draws are integers in [low, high] divided by
/// `denominator`.
struct GeneratorSpec {
  GameClass game_class = GameClass::General;
  int n = 4;
  std::int64_t low = 0;
  std::int64_t high = 10;
  std::int64_t denominator = 1;
  std::uint64_t seed = 0;
};

/// Reproducible for a given spec. The result is certified against its class
/// before it is returned.
inline Game random_game(const GeneratorSpec& spec) {
  PlayerCount count(spec.n);
  require_cap("random_game", static_cast<std::size_t>(spec.n), kRandomGameCap);
  if (spec.low > spec.high) throw std::invalid_argument("random_game needs low <= high");
  if (spec.denominator < 1) throw std::invalid_argument("random_game needs denominator >= 1");

  std::mt19937_64 rng(spec.seed);
  const auto span = static_cast<std::uint64_t>(spec.high - spec.low) + 1;
  auto draw = [&] { return Value(spec.low + static_cast<std::int64_t>(rng() % span), spec.denominator); };

  const std::size_t size = std::size_t{1} << count;
  std::vector<Value> table(size);

  if (spec.game_class == GameClass::Additive) {
    std::vector<Value> weight(static_cast<std::size_t>(spec.n));
    for (auto& w : weight) w = draw();
    for (std::size_t m = 1; m < size; ++m)
      for (int p : Coalition(static_cast<Coalition::mask_type>(m)).players()) table[m] += weight[static_cast<std::size_t>(p - 1)];
  } else {
    for (std::size_t m = 1; m < size; ++m) table[m] = draw();
    if (spec.game_class != GameClass::General) {
      // Superadditive closure: v(S) = max(raw(S), v(A) + v(B)) over splits of
      // S; subsets come first in mask order.
      for (std::size_t m = 1; m < size; ++m) {
        const Coalition s(static_cast<Coalition::mask_type>(m));
        for_each_proper_subset(s, [&](Coalition a) {
          const Value joined = table[a.bits()] + table[(s - a).bits()];
          if (joined > table[m]) table[m] = joined;
        });
      }
      if (spec.game_class == GameClass::StrictlySuperadditive) {
        for (std::size_t m = 1; m < size; ++m)
          table[m] += Value(Coalition(static_cast<Coalition::mask_type>(m)).size() - 1, spec.denominator);
      }
    }
  }

  Game g = Game::from_table(spec.n, std::move(table));
  bool certified = true;
  switch (spec.game_class) {
    case GameClass::Additive: certified = is_additive(g); break;
    case GameClass::Superadditive: certified = is_superadditive(g, false); break;
    case GameClass::StrictlySuperadditive: certified = is_superadditive(g, true); break;
    case GameClass::General: break;
  }
  if (!certified) throw std::logic_error("random_game: generated game failed certification as " + to_string(spec.game_class));
  return g;
}

}  // namespace coalstab
