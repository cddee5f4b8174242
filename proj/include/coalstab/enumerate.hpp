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

#include <cstddef>
#include <optional>
#include <vector>

#include "coalstab/coalition.hpp"
#include "coalstab/errors.hpp"
#include "coalstab/partition.hpp"

namespace coalstab {

/// Restricted growth strings a[0..k): a[0] = 0, a[i] <= 1 + max(a[0..i)).
/// Each string labels one set partition of k elements; advance() walks them
/// in lexicographic order, so the first one is "all in one block".
class RestrictedGrowthString {
 public:
  explicit RestrictedGrowthString(int k) : labels_(static_cast<std::size_t>(k), 0), prefix_max_(labels_.size(), 0) {}

  const std::vector<int>& labels() const noexcept { return labels_; }
  int block_count() const noexcept { return labels_.empty() ? 0 : prefix_max_.back() + 1; }

  bool advance() {
    for (std::size_t i = labels_.size(); i-- > 1;) {
      if (labels_[i] <= prefix_max_[i - 1]) {
        ++labels_[i];
        prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
          labels_[j] = 0;
          prefix_max_[j] = prefix_max_[i];
        }
        return true;
      }
    }
    return false;
  }

  void reset() {
    std::fill(labels_.begin(), labels_.end(), 0);
    std::fill(prefix_max_.begin(), prefix_max_.end(), 0);
  }

 private:
  std::vector<int> labels_;
  std::vector<int> prefix_max_;
};

/// All partitions of a coalition S, each exactly once, in restricted growth
/// string order. Yields collections whose union is S (partitions of N when
/// S = N). Restartable via reset().
class PartitionStream {
 public:
  PartitionStream(int n, Coalition s) : n_(PlayerCount(n)), members_(s.players()), rgs_(static_cast<int>(members_.size())) {
    if (!s.subset_of(Coalition::grand(n))) throw std::invalid_argument("coalition " + s.str() + " outside the player set");
    require_cap("enumerate_partitions", members_.size(), kPartitionEnumerationCap);
  }

  std::optional<Collection> next() {
    if (started_ && !rgs_.advance()) return std::nullopt;
    started_ = true;
    std::vector<Coalition> blocks(static_cast<std::size_t>(rgs_.block_count()));
    for (std::size_t i = 0; i < members_.size(); ++i) blocks[static_cast<std::size_t>(rgs_.labels()[i])].insert(members_[i]);
    return Collection(n_, std::move(blocks));
  }

  void reset() {
    rgs_.reset();
    started_ = false;
  }

 private:
  int n_;
  std::vector<int> members_;
  RestrictedGrowthString rgs_;
  bool started_ = false;
};

/// All collections in {1..n} (including the empty one), each once. A
/// collection is a partition of {*, 1..n} with the block of * dropped, so
/// there are Bell(n+1) of them. The empty collection comes first.
class CollectionStream {
 public:
  explicit CollectionStream(int n) : n_(PlayerCount(n)), rgs_(n + 1) {
    require_cap("enumerate_collections", static_cast<std::size_t>(n), kCollectionEnumerationCap);
  }

  std::optional<Collection> next() {
    if (started_ && !rgs_.advance()) return std::nullopt;
    started_ = true;
    const auto& labels = rgs_.labels();
    // Label 0 is always the block of *, which is dropped.
    std::vector<Coalition> blocks(static_cast<std::size_t>(rgs_.block_count() - 1));
    for (int p = 1; p <= n_; ++p)
      if (int l = labels[static_cast<std::size_t>(p)]; l > 0) blocks[static_cast<std::size_t>(l - 1)].insert(p);
    return Collection(n_, std::move(blocks));
  }

  void reset() {
    rgs_.reset();
    started_ = false;
  }

 private:
  int n_;
  RestrictedGrowthString rgs_;
  bool started_ = false;
};

/// All P-homogeneous partitions, each once: group the blocks of P; a group
/// of two or more blocks becomes their union, a lone block is split by any of
/// its own partitions (including the trivial one).
class HomogeneousPartitionStream {
 public:
  explicit HomogeneousPartitionStream(const Partition& p)
      : p_(p), groups_(static_cast<int>(p.size())) {
    require_cap("enumerate_homogeneous_partitions", static_cast<std::size_t>(p.n()), kPartitionEnumerationCap);
    load_groups();
  }

  std::optional<Partition> next() {
    if (started_) {
      if (!advance_splits()) {
        if (!groups_.advance()) return std::nullopt;
        load_groups();
      }
    }
    started_ = true;
    std::vector<Coalition> blocks = merged_;
    for (std::size_t i = 0; i < splits_.size(); ++i) {
      const auto& members = split_members_[i];
      std::vector<Coalition> parts(static_cast<std::size_t>(splits_[i].block_count()));
      for (std::size_t j = 0; j < members.size(); ++j) parts[static_cast<std::size_t>(splits_[i].labels()[j])].insert(members[j]);
      blocks.insert(blocks.end(), parts.begin(), parts.end());
    }
    return Partition(p_.n(), std::move(blocks));
  }

  void reset() {
    groups_.reset();
    load_groups();
    started_ = false;
  }

 private:
  void load_groups() {
    const int group_count = groups_.block_count();
    std::vector<Coalition> unions(static_cast<std::size_t>(group_count));
    std::vector<int> sizes(static_cast<std::size_t>(group_count), 0);
    for (std::size_t i = 0; i < p_.size(); ++i) {
      auto g = static_cast<std::size_t>(groups_.labels()[i]);
      unions[g] |= p_[i];
      ++sizes[g];
    }
    merged_.clear();
    splits_.clear();
    split_members_.clear();
    for (std::size_t g = 0; g < unions.size(); ++g) {
      if (sizes[g] > 1) {
        merged_.push_back(unions[g]);
      } else {
        split_members_.push_back(unions[g].players());
        splits_.emplace_back(unions[g].size());
      }
    }
  }

  // Odometer over the splits of the lone blocks, last one fastest.
  bool advance_splits() {
    for (std::size_t i = splits_.size(); i-- > 0;) {
      if (splits_[i].advance()) return true;
      splits_[i].reset();
    }
    return false;
  }

  Partition p_;
  RestrictedGrowthString groups_;
  std::vector<Coalition> merged_;
  std::vector<RestrictedGrowthString> splits_;
  std::vector<std::vector<int>> split_members_;
  bool started_ = false;
};

inline PartitionStream enumerate_partitions(int n, Coalition s) { return PartitionStream(n, s); }
inline CollectionStream enumerate_collections(int n) { return CollectionStream(n); }
inline HomogeneousPartitionStream enumerate_homogeneous_partitions(const Partition& p) {
  return HomogeneousPartitionStream(p);
}

/// f(const Partition&) for every partition of {1..n}. Stops early if f
/// returns false (when f returns bool).
template <class F>
void for_each_partition(int n, F&& f) {
  PartitionStream stream(n, Coalition::grand(n));
  while (auto c = stream.next()) {
    Partition p(std::move(*c));
    if constexpr (std::is_same_v<std::invoke_result_t<F&, const Partition&>, bool>) {
      if (!f(p)) return;
    } else {
      f(p);
    }
  }
}

inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

}  // namespace coalstab
