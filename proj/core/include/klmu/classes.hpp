// Copyright 2026 The klmu Authors
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

#ifndef KLMU_CLASSES_HPP
#define KLMU_CLASSES_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klmu/kl.hpp"
#include "klmu/moves.hpp"
#include "klmu/perm.hpp"

namespace klmu {

inline constexpr std::size_t kDefaultNodeLimit = 10'000'000;

struct OrbitResult {
  std::vector<Pair> members;  // oriented, in discovery order
  bool truncated = false;
};

/// Closure of the oriented pair under L-S moves.
OrbitResult ls_orbit(const Pair& pair, std::size_t node_limit = kDefaultNodeLimit);

/// Irreducibility test with a memo shared across calls: every pair seen in
/// an orbit search inherits that orbit's verdict. Thread-safe.
class IrreducibilityChecker {
 public:
  explicit IrreducibilityChecker(std::size_t node_limit = kDefaultNodeLimit);
  ~IrreducibilityChecker();
  IrreducibilityChecker(const IrreducibilityChecker&) = delete;
  IrreducibilityChecker& operator=(const IrreducibilityChecker&) = delete;

  /// Throws DomainError unless the pair is a cover or extremal with odd
  /// length gap, PartialResultError if the orbit outgrows the node limit.
  bool is_irreducible(const Pair& pair);
  std::size_t memo_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool is_irreducible(const Pair& pair, std::size_t node_limit = kDefaultNodeLimit);

struct ClassOptions {
  int k = 0;
  /// Per seed search.
  std::size_t node_limit = kDefaultNodeLimit;
  /// Identify pairs related by inverse and w0 multiplication.
  bool use_symmetries = true;
  int threads = 1;
};

struct EquivalenceClass {
  BigInt mu;
  std::vector<std::size_t> seeds;  // indices into ClassReport::seeds
  bool sink = false;
  PairKey representative;
};

struct ClassReport {
  int n = 0;
  int k = 0;
  std::size_t pair_count = 0;
  /// Classes that never reach a smaller group.
  std::size_t class_count = 0;
  bool sink_reached = false;
  std::vector<Pair> seeds;
  /// Ordered by least seed index; at most one has sink set.
  std::vector<EquivalenceClass> classes;

  std::string to_text() const;
};

/// Partitions mu-positive seeds of S_n into classes of the relation
/// generated by L-S moves, symmetries, compression and decompression up to
/// S_{n+k}. Pairs reaching S_m for m < n all join the sink class.
ClassReport k_class_partition(const std::vector<Pair>& seeds, int n, const ClassOptions& options,
                              KlCache& cache);

/// Irreducible odd extremal pairs of S_n with mu > 0, in stream order.
/// Symmetric images are all listed; canonical_key groups them.
std::vector<Pair> minimal_pairs(int n, KlCache& cache, std::size_t node_limit = kDefaultNodeLimit);

/// All irreducible odd extremal pairs of S_n, in stream order.
std::vector<Pair> irreducible_pairs(int n, IrreducibilityChecker& checker);

/// Move chain from `seed` to (01,10) that never leaves S_m for
/// m <= seed.size() + k. Each phase searches with the smallest extra room
/// that reaches a smaller group. Throws DomainError if no chain exists
/// within the bound, PartialResultError on the node limit.
std::vector<Move> reduction_certificate(const Pair& seed, int k,
                                        std::size_t node_limit = kDefaultNodeLimit);

}  // namespace klmu

#endif  // KLMU_CLASSES_HPP
