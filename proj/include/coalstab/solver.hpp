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

// Optimal coalition structures by dynamic programming over subsets.
//
// opt[S] = max over T in S with min(S) in T of v(T) + opt[S \ T], opt[{}] = 0.
// Restricting T to blocks holding the least member of S visits each partition
// exactly once, for O(3^n) work. Ties go to the smallest block bit pattern.
//
// When all values share a denominator small enough that the scaled
// numerators fit comfortably in 64 bits, the recurrence runs on integers and
// the result is scaled back; otherwise it runs on exact rationals. Both paths
// make the same choices, so witnesses do not depend on the path taken.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "coalstab/enumerate.hpp"
#include "coalstab/errors.hpp"
#include "coalstab/game.hpp"

namespace coalstab {

struct OptResult {
  Value optimum;
  Partition witness;
  /// Number of partitions attaining the optimum, when requested.
  std::optional<std::uint64_t> maximizer_count;
};

namespace detail {

struct ScaledTable {
  std::vector<std::int64_t> values;
  Value::int_type scale;  // common denominator
};

/// Integer image of the table if every |scaled value| * n stays below 2^62.
inline std::optional<ScaledTable> scale_to_int64(const std::vector<Value>& table, int n) {
  using int_type = Value::int_type;
  int_type lcm = 1;
  for (const auto& v : table) {
    const int_type d = v.denominator();
    if (d != 1) lcm = boost::multiprecision::lcm(lcm, d);
    if (lcm > int_type(std::int64_t{1} << 40)) return std::nullopt;
  }
  const int_type bound = int_type(std::int64_t{1} << 62) / (n + 1);
  ScaledTable out;
  out.scale = lcm;
  out.values.reserve(table.size());
  for (const auto& v : table) {
    int_type scaled = v.numerator() * (lcm / v.denominator());
    if (abs(scaled) >= bound) return std::nullopt;
    out.values.push_back(scaled.convert_to<std::int64_t>());
  }
  return out;
}

template <class T>
struct SubsetDp {
  std::vector<T> best;
  std::vector<Coalition::mask_type> choice;
  std::vector<std::uint64_t> count;  // optimal partitions per subset (saturating)
};

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

template <class T>
SubsetDp<T> run_subset_dp(const std::vector<T>& v, int n) {
  const std::size_t size = std::size_t{1} << n;
  SubsetDp<T> dp;
  dp.best.resize(size);
  dp.choice.assign(size, 0);
  dp.count.assign(size, 0);
  dp.count[0] = 1;
  for (std::size_t s = 1; s < size; ++s) {
    const auto set = static_cast<Coalition::mask_type>(s);
    const Coalition::mask_type low = set & (~set + 1);
    const Coalition::mask_type rest = set ^ low;
    bool have = false;
    // Subsets r of rest in increasing order, so block = low | r increases too.
    Coalition::mask_type r = 0;
    while (true) {
      const Coalition::mask_type block = low | r;
      T candidate = v[block] + dp.best[set ^ block];
      if (!have || candidate > dp.best[s]) {
        dp.best[s] = std::move(candidate);
        dp.choice[s] = block;
        dp.count[s] = dp.count[set ^ block];
        have = true;
      } else if (candidate == dp.best[s]) {
        dp.count[s] = saturating_add(dp.count[s], dp.count[set ^ block]);
      }
      if (r == rest) break;
      r = (r - rest) & rest;
    }
  }
  return dp;
}

inline Partition reconstruct(int n, const std::vector<Coalition::mask_type>& choice) {
  std::vector<Coalition> blocks;
  Coalition::mask_type s = Coalition::grand(n).bits();
  while (s) {
    blocks.emplace_back(choice[s]);
    s ^= choice[s];
  }
  return Partition(n, std::move(blocks));
}

}  // namespace detail

/// Maximum social welfare over all partitions of N, with a witness. The
/// maximizer count comes from the same recurrence: every optimal partition
/// of S is an optimal block holding min(S) plus an optimal partition of the
/// remainder.
inline OptResult optimal_partition(const Game& g, bool count_maximizers = false) {
  const int n = g.n();
  require_cap("optimal_partition", static_cast<std::size_t>(n), kSolverCap);
  const std::vector<Value> table = g.table();
  const auto full = Coalition::grand(n).bits();

  if (auto scaled = detail::scale_to_int64(table, n)) {
    auto dp = detail::run_subset_dp(scaled->values, n);
    Value optimum(Value::rep_type(Value::int_type(dp.best[full]), scaled->scale));
    std::optional<std::uint64_t> count;
    if (count_maximizers) count = dp.count[full];
    return {optimum, detail::reconstruct(n, dp.choice), count};
  }
  auto dp = detail::run_subset_dp(table, n);
  std::optional<std::uint64_t> count;
  if (count_maximizers) count = dp.count[full];
  return {dp.best[full], detail::reconstruct(n, dp.choice), count};
}

namespace detail {

// layers[j][S]: best partition of S into at most j+1 blocks.
template <class T>
std::pair<T, Partition> run_bounded_dp(const std::vector<T>& v, int n, int k) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::vector<T>> best(static_cast<std::size_t>(k), std::vector<T>(size));
  std::vector<std::vector<Coalition::mask_type>> choice(static_cast<std::size_t>(k),
                                                        std::vector<Coalition::mask_type>(size, 0));
  for (int j = 0; j < k; ++j) {
    auto& layer = best[static_cast<std::size_t>(j)];
    auto& pick = choice[static_cast<std::size_t>(j)];
    for (std::size_t s = 1; s < size; ++s) {
      const auto set = static_cast<Coalition::mask_type>(s);
      const Coalition::mask_type low = set & (~set + 1);
      const Coalition::mask_type rest = set ^ low;
      bool have = false;
      Coalition::mask_type r = 0;
      while (true) {
        const Coalition::mask_type block = low | r;
        const Coalition::mask_type remainder = set ^ block;
        if (remainder == 0 || j > 0) {
          T candidate = remainder == 0 ? v[block] : v[block] + best[static_cast<std::size_t>(j - 1)][remainder];
          if (!have || candidate > layer[s]) {
            layer[s] = std::move(candidate);
            pick[s] = block;
            have = true;
          }
        }
        if (r == rest) break;
        r = (r - rest) & rest;
      }
    }
  }
  std::vector<Coalition> blocks;
  Coalition::mask_type s = Coalition::grand(n).bits();
  for (int j = k - 1; s; --j) {
    const auto block = choice[static_cast<std::size_t>(j)][s];
    blocks.emplace_back(block);
    s ^= block;
  }
  return {best[static_cast<std::size_t>(k - 1)][Coalition::grand(n).bits()], Partition(n, std::move(blocks))};
}

}  // namespace detail

/// Maximum social welfare over partitions with at most k blocks.
inline OptResult optimal_partition_bounded(const Game& g, int k) {
  const int n = g.n();
  if (k < 1 || k > n) throw std::invalid_argument("size bound k=" + std::to_string(k) + " outside [1, n]");
  require_cap("optimal_partition_bounded", static_cast<std::size_t>(n), kBoundedSolverCap);
  const std::vector<Value> table = g.table();
  if (auto scaled = detail::scale_to_int64(table, n)) {
    auto [best, witness] = detail::run_bounded_dp(scaled->values, n, k);
    return {Value(Value::rep_type(Value::int_type(best), scaled->scale)), std::move(witness), std::nullopt};
  }
  auto [best, witness] = detail::run_bounded_dp(table, n, k);
  return {std::move(best), std::move(witness), std::nullopt};
}

/// Every partition attaining the optimum, in enumeration order.
inline std::vector<Partition> all_maximizers(const Game& g) {
  require_cap("all_maximizers", static_cast<std::size_t>(g.n()), kMaximizerEnumerationCap);
  const Value optimum = optimal_partition(g).optimum;
  std::vector<Partition> out;
  for_each_partition(g.n(), [&](const Partition& p) {
    if (social_welfare(g, p) == optimum) out.push_back(p);
  });
  return out;
}

}  // namespace coalstab
