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

#ifndef KLMU_DETAIL_PACKED_HPP
#define KLMU_DETAIL_PACKED_HPP

#include <cstdint>
#include <utility>

#include "klmu/error.hpp"
#include "klmu/perm.hpp"

namespace klmu::detail {

inline constexpr int kMaxPackedSize = 16;

/// Four bits per entry, position 0 in the top nibble, so that integer order
/// matches lexicographic word order for a fixed size.
inline std::uint64_t pack(const Permutation& p) noexcept {
  std::uint64_t bits = 0;
  for (int i = 0; i < p.size(); ++i) bits |= std::uint64_t(p[i]) << (60 - 4 * i);
  return bits;
}

inline Permutation unpack(std::uint64_t bits, int n) {
  std::uint8_t word[kMaxPackedSize];
  for (int i = 0; i < n; ++i) word[i] = static_cast<std::uint8_t>(bits >> (60 - 4 * i) & 0xf);
  return Permutation::from_bytes_unchecked({word, static_cast<std::size_t>(n)});
}

inline void require_packable(int n, const char* what) {
  if (n > kMaxPackedSize) {
    throw DomainError(std::string(what) + ": sizes above 16 are not supported (n=" +
                      std::to_string(n) + ")");
  }
}

struct PackedPerm {
  std::uint64_t bits = 0;
  std::uint8_t n = 0;

  friend bool operator==(const PackedPerm&, const PackedPerm&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const PackedPerm& p) {
    return H::combine(std::move(h), p.bits, p.n);
  }
};

struct PackedPair {
  std::uint64_t x = 0;
  std::uint64_t w = 0;
  std::uint8_t n = 0;

  PackedPair() = default;
  PackedPair(std::uint64_t x_, std::uint64_t w_, int n_)
      : x(x_), w(w_), n(static_cast<std::uint8_t>(n_)) {}
  explicit PackedPair(const Pair& p) : x(pack(p.x)), w(pack(p.w)), n(static_cast<std::uint8_t>(p.size())) {}

  Pair unpacked() const { return Pair(unpack(x, n), unpack(w, n)); }

  friend bool operator==(const PackedPair&, const PackedPair&) = default;
  friend auto operator<=>(const PackedPair&, const PackedPair&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const PackedPair& p) {
    return H::combine(std::move(h), p.x, p.w, p.n);
  }
};

}  // namespace klmu::detail

#endif  // KLMU_DETAIL_PACKED_HPP
