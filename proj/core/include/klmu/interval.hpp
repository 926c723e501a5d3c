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

#ifndef KLMU_INTERVAL_HPP
#define KLMU_INTERVAL_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "klmu/perm.hpp"

namespace klmu {

/// Lexicographic enumeration of every z with lower <= z <= upper in Bruhat
/// order whose right descents contain `right_required` and whose left
/// descents contain `left_required`.
///
/// Permutations are built one position at a time. The rank condition
/// r_lower(p,q) <= r_z(p,q) <= r_upper(p,q) only involves positions up to p,
/// so every prefix violating it is pruned; descent requirements are checked
/// as soon as the entries they compare are placed.
class IntervalEnumerator {
 public:
  IntervalEnumerator(const Permutation& lower, const Permutation& upper,
                     GeneratorSet right_required = 0, GeneratorSet left_required = 0);

  /// Writes the next member into `out`; false once exhausted.
  bool next(Permutation& out);

 private:
  bool admissible(int depth, int value) const;

  int n_;
  GeneratorSet right_required_;
  GeneratorSet left_required_;
  // Row-major (position, threshold) rank bounds.
  std::vector<std::uint8_t> lo_;
  std::vector<std::uint8_t> hi_;
  std::array<std::uint8_t, kMaxPermSize> word_{};
  std::array<int, kMaxPermSize + 1> next_candidate_{};
  std::uint64_t used_ = 0;
  int depth_ = 0;
  bool started_ = false;
  bool done_ = false;
};

/// All members of the interval in lexicographic order.
std::vector<Permutation> interval_members(const Permutation& lower, const Permutation& upper,
                                          GeneratorSet right_required = 0,
                                          GeneratorSet left_required = 0);

}  // namespace klmu

#endif  // KLMU_INTERVAL_HPP
