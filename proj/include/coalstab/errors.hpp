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
#include <stdexcept>
#include <string>

namespace coalstab {

/// An enumeration or table size limit was hit. Carries the limit so callers
/// (the CLI in particular) can report it.
class cap_exceeded : public std::runtime_error {
 public:
  cap_exceeded(const std::string& what_op, std::size_t size, std::size_t cap)
      : std::runtime_error(what_op + ": size " + std::to_string(size) + " exceeds cap " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

/// Malformed game file, coalition literal or value.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_cap(const char* what_op, std::size_t size, std::size_t cap) {
  if (size > cap) throw cap_exceeded(what_op, size, cap);
}

// Per-operation caps. Bell-number growth sets the enumeration limits.
inline constexpr int kMaxPlayers = 20;
inline constexpr int kPartitionEnumerationCap = 12;
inline constexpr int kCollectionEnumerationCap = 10;
inline constexpr int kSolverCap = 18;
inline constexpr int kBoundedSolverCap = 16;
inline constexpr int kMaximizerEnumerationCap = 10;
inline constexpr int kClosureCap = 8;
inline constexpr int kRandomGameCap = 8;

}  // namespace coalstab
