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

#include "klmu/moves.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

#include "klmu/error.hpp"

namespace klmu {
namespace {

void check_window(const Permutation& w, int k) {
  if (k < 0 || k + 2 >= w.size()) {
    throw DomainError("L-S window " + std::to_string(k) + " out of range for n=" +
                      std::to_string(w.size()));
  }
}

bool window_non_monotone(const Permutation& w, int k) {
  const int a = w[k];
  const int b = w[k + 1];
  const int c = w[k + 2];
  return !((a < b && b < c) || (a > b && b > c));
}

int parse_int(std::string_view tok, std::string_view line) {
  if (tok.empty() || tok.size() > 3 ||
      !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ParseError("move: bad argument in '" + std::string(line) + "'");
  }
  return std::stoi(std::string(tok));
}

const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::kInverse: return "inv";
    case Symmetry::kLeftLong: return "left";
    case Symmetry::kRightLong: return "right";
  }
  return "?";
}

Permutation reverse_values(const Permutation& w) {
  std::vector<std::uint8_t> out(w.bytes().begin(), w.bytes().end());
  for (auto& v : out) v = static_cast<std::uint8_t>(w.size() - 1 - v);
  return Permutation::from_bytes_unchecked(out);
}

Permutation reverse_positions(const Permutation& w) {
  std::vector<std::uint8_t> out(w.bytes().rbegin(), w.bytes().rend());
  return Permutation::from_bytes_unchecked(out);
}

}  // namespace

std::string Move::to_string() const {
  switch (kind) {
    case Kind::kRight: return "R " + std::to_string(index);
    case Kind::kLeft: return "L " + std::to_string(index);
    case Kind::kCompress: return "C " + std::to_string(index);
    case Kind::kDecompress: return "D " + std::to_string(index) + " " + std::to_string(value);
    case Kind::kSymmetry: return std::string("SYM ") + symmetry_name(symmetry);
  }
  return {};
}

Move Move::parse(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  if (toks.empty()) throw ParseError("move: empty line");
  const std::string_view op = toks[0];
  auto want = [&](std::size_t count) {
    if (toks.size() != count) throw ParseError("move: wrong arity in '" + std::string(line) + "'");
  };
  if (op == "R") {
    want(2);
    return right(parse_int(toks[1], line));
  }
  if (op == "L") {
    want(2);
    return left(parse_int(toks[1], line));
  }
  if (op == "C") {
    want(2);
    return compress(parse_int(toks[1], line));
  }
  if (op == "D") {
    want(3);
    return decompress(parse_int(toks[1], line), parse_int(toks[2], line));
  }
  if (op == "SYM") {
    want(2);
    if (toks[1] == "inv") return symmetry_move(Symmetry::kInverse);
    if (toks[1] == "left") return symmetry_move(Symmetry::kLeftLong);
    if (toks[1] == "right") return symmetry_move(Symmetry::kRightLong);
    throw ParseError("move: unknown symmetry '" + std::string(toks[1]) + "'");
  }
  throw ParseError("move: unknown operator '" + std::string(op) + "'");
}

Pair PairKey::pair() const { return Pair(parse_permutation(x_word), parse_permutation(w_word)); }

bool in_R(const Permutation& w, int k) {
  check_window(w, k);
  return window_non_monotone(w, k);
}

bool in_L(const Permutation& w, int k) { return in_R(w.inverse(), k); }

Permutation apply_R(const Permutation& w, int k) {
  if (!in_R(w, k)) {
    throw DomainError("apply_R: " + w.compact() + " is monotone on window " + std::to_string(k));
  }
  const Permutation first = w.swap_positions(k, k + 1);
  if (window_non_monotone(first, k)) return first;
  return w.swap_positions(k + 1, k + 2);
}

Permutation apply_L(const Permutation& w, int k) {
  if (!in_L(w, k)) {
    throw DomainError("apply_L: " + w.compact() + " is monotone on value window " + std::to_string(k));
  }
  return apply_R(w.inverse(), k).inverse();
}

std::vector<std::pair<Move, Pair>> ls_moves(const Pair& pair) {
  std::vector<std::pair<Move, Pair>> out;
  const int n = pair.size();
  if (n < 3) return out;
  const Permutation xi = pair.x.inverse();
  const Permutation wi = pair.w.inverse();
  for (int k = 0; k + 2 < n; ++k) {
    if (window_non_monotone(pair.x, k) && window_non_monotone(pair.w, k)) {
      out.emplace_back(Move::right(k), Pair(apply_R(pair.x, k), apply_R(pair.w, k)));
    }
  }
  for (int k = 0; k + 2 < n; ++k) {
    if (window_non_monotone(xi, k) && window_non_monotone(wi, k)) {
      out.emplace_back(Move::left(k), Pair(apply_R(xi, k).inverse(), apply_R(wi, k).inverse()));
    }
  }
  return out;
}

Pair orient(const Pair& pair) {
  if (bruhat_leq(pair.x, pair.w)) return pair;
  if (bruhat_leq(pair.w, pair.x)) return Pair(pair.w, pair.x);
  const int lx = length(pair.x);
  const int lw = length(pair.w);
  if (lx < lw || (lx == lw && pair.x < pair.w)) return pair;
  return Pair(pair.w, pair.x);
}

std::vector<int> naked_capitols(const Pair& pair) {
  const int n = pair.size();
  std::vector<int> out;
  std::uint64_t sx = 0;
  std::uint64_t sw = 0;
  auto d = [n](std::uint64_t mw, std::uint64_t mx, int q) {
    if (q >= n) return 0;
    return std::popcount(mw >> q) - std::popcount(mx >> q);
  };
  for (int i = 0; i < n; ++i) {
    const std::uint64_t px = sx;
    const std::uint64_t pw = sw;
    sx |= std::uint64_t{1} << pair.x[i];
    sw |= std::uint64_t{1} << pair.w[i];
    if (pair.x[i] != pair.w[i]) continue;
    const int v = pair.x[i];
    if (d(sw, sx, v) == 0 && d(pw, px, v) == 0 && d(sw, sx, v + 1) == 0 && d(pw, px, v + 1) == 0) {
      out.push_back(i);
    }
  }
  return out;
}

bool is_compressible(const Pair& pair) { return !naked_capitols(pair).empty(); }

Pair compress(const Pair& pair, int i) {
  const auto naked = naked_capitols(pair);
  if (std::find(naked.begin(), naked.end(), i) == naked.end()) {
    throw DomainError("compress: position " + std::to_string(i) + " is not a naked capitol of " +
                      pair.to_string());
  }
  return Pair(pair.x.erase_at(i), pair.w.erase_at(i));
}

std::optional<Pair> decompress(const Pair& pair, int i, int v) {
  const int n = pair.size();
  if (i < 0 || i > n || v < 0 || v > n || n + 1 > kMaxPermSize) return std::nullopt;
  Pair out(pair.x.insert_at(i, v), pair.w.insert_at(i, v));
  const auto naked = naked_capitols(out);
  if (std::find(naked.begin(), naked.end(), i) == naked.end()) return std::nullopt;
  return out;
}

Pair apply_symmetry(const Pair& pair, Symmetry s) {
  switch (s) {
    case Symmetry::kInverse: return Pair(pair.x.inverse(), pair.w.inverse());
    case Symmetry::kLeftLong: return Pair(reverse_values(pair.w), reverse_values(pair.x));
    case Symmetry::kRightLong: return Pair(reverse_positions(pair.w), reverse_positions(pair.x));
  }
  return pair;
}

std::vector<std::pair<Pair, std::vector<Symmetry>>> symmetry_orbit_words(const Pair& pair) {
  std::vector<std::pair<Pair, std::vector<Symmetry>>> orbit{{pair, {}}};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (Symmetry s : {Symmetry::kInverse, Symmetry::kLeftLong, Symmetry::kRightLong}) {
      Pair next = apply_symmetry(orbit[head].first, s);
      const bool seen = std::any_of(orbit.begin(), orbit.end(),
                                    [&](const auto& e) { return e.first == next; });
      if (!seen) {
        auto word = orbit[head].second;
        word.push_back(s);
        orbit.emplace_back(std::move(next), std::move(word));
      }
    }
  }
  return orbit;
}

std::vector<Pair> symmetry_orbit(const Pair& pair) {
  std::vector<Pair> out;
  for (auto& [p, word] : symmetry_orbit_words(pair)) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

PairKey canonical_key(const Pair& pair) {
  const auto orbit = symmetry_orbit(pair);
  const Pair& least = orbit.front();
  return PairKey{pair.size(), least.x.compact(), least.w.compact()};
}

Pair apply_move(const Pair& pair, const Move& move) {
  switch (move.kind) {
    case Move::Kind::kRight:
      if (!in_R(pair.x, move.index) || !in_R(pair.w, move.index)) {
        throw DomainError("move " + move.to_string() + " does not apply to " + pair.to_string());
      }
      return orient(Pair(apply_R(pair.x, move.index), apply_R(pair.w, move.index)));
    case Move::Kind::kLeft:
      if (!in_L(pair.x, move.index) || !in_L(pair.w, move.index)) {
        throw DomainError("move " + move.to_string() + " does not apply to " + pair.to_string());
      }
      return orient(Pair(apply_L(pair.x, move.index), apply_L(pair.w, move.index)));
    case Move::Kind::kCompress:
      return orient(compress(pair, move.index));
    case Move::Kind::kDecompress: {
      auto out = decompress(pair, move.index, move.value);
      if (!out) {
        throw DomainError("move " + move.to_string() + " does not apply to " + pair.to_string());
      }
      return orient(*out);
    }
    case Move::Kind::kSymmetry:
      return orient(apply_symmetry(pair, move.symmetry));
  }
  return pair;
}

Pair replay(Pair start, std::span<const Move> moves) {
  Pair current = orient(start);
  for (const Move& m : moves) current = apply_move(current, m);
  return current;
}

std::string write_move_log(std::span<const Move> moves) {
  std::string out;
  for (const Move& m : moves) {
    out += m.to_string();
    out += '\n';
  }
  return out;
}

std::vector<Move> parse_move_log(std::string_view text) {
  std::vector<Move> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    if (std::any_of(line.begin(), line.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); })) {
      out.push_back(Move::parse(line));
    }
    start = end + 1;
  }
  return out;
}

}  // namespace klmu
