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

#ifndef KLMU_PERM_HPP
#define KLMU_PERM_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace klmu {

inline constexpr int kMaxPermSize = 64;

/// Bit i set means the generator s_i (swap of positions i-1 and i) is present.
using GeneratorSet = std::uint64_t;

/// A bijection of {0..n-1} in one-line notation, 1 <= n <= 64.
///
/// Values are immutable; every operation returns a new permutation. Words
/// beyond position n are kept zero so that the defaulted comparisons order
/// permutations by size first and then lexicographically by word, which is
/// also the order of the compact string form.
class Permutation {
 public:
  Permutation() = default;

  /// Validates that `word` is a bijection of {0..n-1}. Throws ParseError.
  explicit Permutation(std::span<const int> word);
  Permutation(std::initializer_list<int> word);

  static Permutation identity(int n);
  static Permutation long_word(int n);

  /// Skips validation; `word` must already be a bijection.
  static Permutation from_bytes_unchecked(std::span<const std::uint8_t> word);

  int size() const noexcept { return n_; }
  int operator[](int i) const noexcept { return word_[static_cast<std::size_t>(i)]; }
  std::span<const std::uint8_t> bytes() const noexcept {
    return {word_.data(), static_cast<std::size_t>(n_)};
  }
  std::vector<int> to_vector() const;

  /// Digits 0-9 then letters a-z for 10-35; comma form beyond 36.
  std::string compact() const;

  Permutation inverse() const;

  /// w * s where s swaps positions i and j.
  Permutation swap_positions(int i, int j) const;
  /// s * w where s swaps values a and b.
  Permutation swap_values(int a, int b) const;

  /// Delete position i and renumber the remaining values down past word[i].
  Permutation erase_at(int i) const;
  /// Insert value v at position i; existing values >= v move up by one.
  Permutation insert_at(int i, int v) const;

  /// Set of values occupying positions 0..p (bit per value).
  std::uint64_t prefix_mask(int p) const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation&,
                                          const Permutation&) = default;

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxPermSize> word_{};
};

/// Parses compact ("21076543a98") or comma ("2,1,0") notation.
Permutation parse_permutation(std::string_view text);

std::string format_generator_set(GeneratorSet set);

int length(const Permutation& w);
Permutation compose(const Permutation& u, const Permutation& v);
inline Permutation inverse(const Permutation& w) { return w.inverse(); }
inline Permutation long_word(int n) { return Permutation::long_word(n); }

GeneratorSet right_descents(const Permutation& w);
GeneratorSet left_descents(const Permutation& w);

/// |{i <= p : w(i) >= q}|.
int rank_count(const Permutation& w, int p, int q);
/// rank_count(w,p,q) - rank_count(x,p,q). Throws DomainError on size mismatch.
int diff(const Permutation& x, const Permutation& w, int p, int q);

bool bruhat_leq(const Permutation& x, const Permutation& w);
std::vector<Permutation> lower_covers(const Permutation& w);
bool covers(const Permutation& x, const Permutation& w);

/// Ordered pair of permutations of equal size.
struct Pair {
  Permutation x;
  Permutation w;

  Pair() = default;
  /// Throws DomainError when the sizes differ.
  Pair(Permutation x_, Permutation w_);

  int size() const noexcept { return x.size(); }
  std::string to_string() const { return "(" + x.compact() + "," + w.compact() + ")"; }

  friend bool operator==(const Pair&, const Pair&) = default;
  friend std::strong_ordering operator<=>(const Pair&, const Pair&) = default;
};

/// Positive parts summing to n.
class Composition {
 public:
  /// Throws DomainError on an empty list or a non-positive part.
  explicit Composition(std::vector<int> parts);
  const std::vector<int>& parts() const noexcept { return parts_; }
  int total() const noexcept { return total_; }
  std::string to_string() const;

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// Decreasing run of increasing blocks: [n-a1..n-1], [n-a1-a2..n-a1-1], ...
Permutation x_alpha(const Composition& alpha);
/// The composition with x_alpha(alpha) == w, if w has that block form.
std::optional<Composition> block_composition(const Permutation& w);
/// All 2^(n-1) members of X_n in composition-bitmask order.
std::vector<Permutation> block_permutations(int n);
bool is_crosshatch(const Permutation& x, const Permutation& w);

/// n x (n+1) table of d_{x,w}(p,q) for p in [0,n), q in [0,n]; out-of-grid
/// evaluations are zero.
class DiffGrid {
 public:
  DiffGrid(const Permutation& x, const Permutation& w);
  int size() const noexcept { return n_; }
  int at(int p, int q) const noexcept;
  int min_value() const noexcept;

 private:
  int n_;
  std::vector<int> cells_;
};

}  // namespace klmu

#endif  // KLMU_PERM_HPP
