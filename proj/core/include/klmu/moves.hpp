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

#ifndef KLMU_MOVES_HPP
#define KLMU_MOVES_HPP

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "klmu/perm.hpp"

namespace klmu {

/// The three pair maps preserving mu: (x^-1, w^-1), (w0 w, w0 x) and (w w0, x w0).
enum class Symmetry : std::uint8_t { kInverse, kLeftLong, kRightLong };

/// One step of a chain of pair rewrites. Serialized as "R k", "L k", "C i",
/// "D i v" or "SYM inv|left|right".
struct Move {
  enum class Kind : std::uint8_t { kRight, kLeft, kCompress, kDecompress, kSymmetry };

  Kind kind = Kind::kRight;
  int index = 0;
  int value = 0;
  Symmetry symmetry = Symmetry::kInverse;

  static Move right(int k) { return {Kind::kRight, k, 0, Symmetry::kInverse}; }
  static Move left(int k) { return {Kind::kLeft, k, 0, Symmetry::kInverse}; }
  static Move compress(int i) { return {Kind::kCompress, i, 0, Symmetry::kInverse}; }
  static Move decompress(int i, int v) { return {Kind::kDecompress, i, v, Symmetry::kInverse}; }
  static Move symmetry_move(Symmetry s) { return {Kind::kSymmetry, 0, 0, s}; }

  std::string to_string() const;
  static Move parse(std::string_view line);

  friend bool operator==(const Move&, const Move&) = default;
};

/// Lexicographically least member of a pair's symmetry orbit, as compact words.
struct PairKey {
  int n = 0;
  std::string x_word;
  std::string w_word;

  Pair pair() const;
  std::string to_string() const { return "(" + x_word + "," + w_word + ")"; }

  friend bool operator==(const PairKey&, const PairKey&) = default;
  friend std::strong_ordering operator<=>(const PairKey&, const PairKey&) = default;
};

/// Window (w(k), w(k+1), w(k+2)) is neither increasing nor decreasing.
/// Throws DomainError unless 0 <= k <= n-3.
bool in_R(const Permutation& w, int k);
bool in_L(const Permutation& w, int k);
/// The unique one of w*s_{k+1}, w*s_{k+2} whose window stays non-monotone.
Permutation apply_R(const Permutation& w, int k);
Permutation apply_L(const Permutation& w, int k);

/// Every L-S move applicable to both members, with the raw (unoriented) image.
std::vector<std::pair<Move, Pair>> ls_moves(const Pair& pair);

/// Bruhat-smaller member first; incomparable pairs are ordered by length
/// and then lexicographically.
Pair orient(const Pair& pair);

/// Positions i with x(i) = w(i) = v and d_{x,w} zero at the four corners
/// (i,v), (i-1,v), (i,v+1), (i-1,v+1). Expects x <= w.
std::vector<int> naked_capitols(const Pair& pair);
bool is_compressible(const Pair& pair);

/// Deletes column i and row w(i). Throws DomainError unless i is naked.
Pair compress(const Pair& pair, int i);
/// Inserts a capitol at (i, v); empty if that capitol is not naked.
std::optional<Pair> decompress(const Pair& pair, int i, int v);

Pair apply_symmetry(const Pair& pair, Symmetry s);
/// Closure of {pair} under the three symmetries, sorted, at most 8 members.
std::vector<Pair> symmetry_orbit(const Pair& pair);
/// Orbit members together with a symmetry word reaching each from `pair`.
std::vector<std::pair<Pair, std::vector<Symmetry>>> symmetry_orbit_words(const Pair& pair);
PairKey canonical_key(const Pair& pair);

/// Applies one move and re-orients the result. Throws DomainError when the
/// move does not apply.
Pair apply_move(const Pair& pair, const Move& move);
Pair replay(Pair start, std::span<const Move> moves);

std::string write_move_log(std::span<const Move> moves);
std::vector<Move> parse_move_log(std::string_view text);

}  // namespace klmu

#endif  // KLMU_MOVES_HPP
