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

#include "klmu/interval.hpp"

#include <bit>

#include "klmu/error.hpp"

namespace klmu {

IntervalEnumerator::IntervalEnumerator(const Permutation& lower, const Permutation& upper,
                                       GeneratorSet right_required, GeneratorSet left_required)
    : n_(upper.size()), right_required_(right_required), left_required_(left_required) {
  if (lower.size() != upper.size()) throw DomainError("interval: size mismatch");
  const auto rows = static_cast<std::size_t>(n_);
  lo_.assign(rows * rows, 0);
  hi_.assign(rows * rows, 0);
  std::uint64_t sl = 0;
  std::uint64_t su = 0;
  for (int p = 0; p < n_; ++p) {
    sl |= std::uint64_t{1} << lower[p];
    su |= std::uint64_t{1} << upper[p];
    for (int q = 1; q < n_; ++q) {
      lo_[static_cast<std::size_t>(p * n_ + q)] = static_cast<std::uint8_t>(std::popcount(sl >> q));
      hi_[static_cast<std::size_t>(p * n_ + q)] = static_cast<std::uint8_t>(std::popcount(su >> q));
    }
  }
  done_ = !bruhat_leq(lower, upper);
}

bool IntervalEnumerator::admissible(int depth, int value) const {
  const std::uint64_t bit = std::uint64_t{1} << value;
  if (used_ & bit) return false;
  if (value + 1 < n_ && (left_required_ >> (value + 1) & 1) && !(used_ >> (value + 1) & 1)) {
    return false;
  }
  const std::uint64_t mask = used_ | bit;
  const std::uint8_t* lo = &lo_[static_cast<std::size_t>(depth * n_)];
  const std::uint8_t* hi = &hi_[static_cast<std::size_t>(depth * n_)];
  for (int q = 1; q < n_; ++q) {
    const int c = std::popcount(mask >> q);
    if (c < lo[q] || c > hi[q]) return false;
  }
  return true;
}

bool IntervalEnumerator::next(Permutation& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    depth_ = 0;
    next_candidate_[0] = 0;
  } else {
    // Resume by backtracking out of the last emitted leaf.
    depth_ = n_ - 1;
    used_ &= ~(std::uint64_t{1} << word_[static_cast<std::size_t>(depth_)]);
    next_candidate_[static_cast<std::size_t>(depth_)] = word_[static_cast<std::size_t>(depth_)] + 1;
  }
  while (true) {
    const auto d = static_cast<std::size_t>(depth_);
    int limit = n_;
    if (depth_ > 0 && (right_required_ >> depth_ & 1)) limit = word_[d - 1];
    int value = next_candidate_[d];
    while (value < limit && !admissible(depth_, value)) ++value;
    if (value < limit) {
      word_[d] = static_cast<std::uint8_t>(value);
      used_ |= std::uint64_t{1} << value;
      if (depth_ + 1 == n_) {
        out = Permutation::from_bytes_unchecked({word_.data(), static_cast<std::size_t>(n_)});
        return true;
      }
      ++depth_;
      next_candidate_[d + 1] = 0;
      continue;
    }
    if (depth_ == 0) {
      done_ = true;
      return false;
    }
    --depth_;
    const auto up = static_cast<std::size_t>(depth_);
    used_ &= ~(std::uint64_t{1} << word_[up]);
    next_candidate_[up] = word_[up] + 1;
  }
}

std::vector<Permutation> interval_members(const Permutation& lower, const Permutation& upper,
                                          GeneratorSet right_required, GeneratorSet left_required) {
  std::vector<Permutation> out;
  IntervalEnumerator it(lower, upper, right_required, left_required);
  Permutation z;
  while (it.next(z)) out.push_back(z);
  return out;
}

}  // namespace klmu
