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

#include "klmu/perm.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

#include "klmu/error.hpp"

namespace klmu {
namespace {

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

char digit_char(int v) {
  return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void check_same_size(const Permutation& a, const Permutation& b, const char* op) {
  if (a.size() != b.size()) {
    throw DomainError(std::string(op) + ": size mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

Permutation::Permutation(std::span<const int> word) {
  if (word.empty()) throw ParseError("permutation: empty word");
  if (word.size() > static_cast<std::size_t>(kMaxPermSize)) {
    throw ParseError("permutation: size " + std::to_string(word.size()) + " exceeds 64");
  }
  const int n = static_cast<int>(word.size());
  std::uint64_t seen = 0;
  for (int v : word) {
    if (v < 0 || v >= n) {
      throw ParseError("permutation: value " + std::to_string(v) + " out of range for n=" +
                       std::to_string(n));
    }
    const std::uint64_t bit = std::uint64_t{1} << v;
    if (seen & bit) throw ParseError("permutation: duplicate value " + std::to_string(v));
    seen |= bit;
  }
  n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(word[static_cast<std::size_t>(i)]);
}

Permutation::Permutation(std::initializer_list<int> word)
    : Permutation(std::span<const int>(word.begin(), word.size())) {}

Permutation Permutation::identity(int n) {
  if (n < 1 || n > kMaxPermSize) throw DomainError("identity: size out of range");
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) p.word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::long_word(int n) {
  if (n < 1 || n > kMaxPermSize) throw DomainError("long_word: size out of range");
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) p.word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n - 1 - i);
  return p;
}

Permutation Permutation::from_bytes_unchecked(std::span<const std::uint8_t> word) {
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(word.size());
  std::copy(word.begin(), word.end(), p.word_.begin());
  return p;
}

std::vector<int> Permutation::to_vector() const {
  return std::vector<int>(word_.begin(), word_.begin() + n_);
}

std::string Permutation::compact() const {
  std::string out;
  if (n_ <= 36) {
    out.reserve(n_);
    for (int i = 0; i < n_; ++i) out.push_back(digit_char(word_[static_cast<std::size_t>(i)]));
    return out;
  }
  for (int i = 0; i < n_; ++i) {
    if (i) out.push_back(',');
    out += std::to_string(word_[static_cast<std::size_t>(i)]);
  }
  return out;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.n_ = n_;
  for (int i = 0; i < n_; ++i) p.word_[word_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::swap_positions(int i, int j) const {
  Permutation p = *this;
  std::swap(p.word_[static_cast<std::size_t>(i)], p.word_[static_cast<std::size_t>(j)]);
  return p;
}

Permutation Permutation::swap_values(int a, int b) const {
  Permutation p = *this;
  for (int i = 0; i < n_; ++i) {
    auto& v = p.word_[static_cast<std::size_t>(i)];
    if (v == a) {
      v = static_cast<std::uint8_t>(b);
    } else if (v == b) {
      v = static_cast<std::uint8_t>(a);
    }
  }
  return p;
}

Permutation Permutation::erase_at(int i) const {
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n_ - 1);
  const int removed = word_[static_cast<std::size_t>(i)];
  int k = 0;
  for (int j = 0; j < n_; ++j) {
    if (j == i) continue;
    const int v = word_[static_cast<std::size_t>(j)];
    p.word_[static_cast<std::size_t>(k++)] = static_cast<std::uint8_t>(v > removed ? v - 1 : v);
  }
  return p;
}

Permutation Permutation::insert_at(int i, int v) const {
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n_ + 1);
  int k = 0;
  for (int j = 0; j <= n_; ++j) {
    if (j == i) {
      p.word_[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(v);
      continue;
    }
    const int old = word_[static_cast<std::size_t>(k++)];
    p.word_[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(old >= v ? old + 1 : old);
  }
  return p;
}

std::uint64_t Permutation::prefix_mask(int p) const noexcept {
  std::uint64_t m = 0;
  for (int i = 0; i <= p && i < n_; ++i) m |= std::uint64_t{1} << word_[static_cast<std::size_t>(i)];
  return m;
}

Permutation parse_permutation(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) throw ParseError("permutation: empty input");

  std::vector<int> word;
  if (s.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t end = s.find(',', start);
      if (end == std::string_view::npos) end = s.size();
      const std::string_view token = trim(s.substr(start, end - start));
      if (token.empty() || !std::all_of(token.begin(), token.end(),
                                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError("permutation: bad token '" + std::string(token) + "'");
      }
      if (token.size() > 3) throw ParseError("permutation: value '" + std::string(token) + "' out of range");
      word.push_back(std::stoi(std::string(token)));
      start = end + 1;
    }
  } else {
    for (char c : s) {
      const int v = digit_value(c);
      if (v < 0) throw ParseError(std::string("permutation: bad character '") + c + "'");
      word.push_back(v);
    }
  }
  const int n = static_cast<int>(word.size());
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const int v = word[i];
    if (v >= n || n > kMaxPermSize) {
      throw ParseError("permutation: value " + std::to_string(v) + " out of range for n=" +
                       std::to_string(n));
    }
    if (seen & (std::uint64_t{1} << v)) {
      throw ParseError("permutation: duplicate value " + std::to_string(v));
    }
    seen |= std::uint64_t{1} << v;
  }
  return Permutation(word);
}

std::string format_generator_set(GeneratorSet set) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int i = 1; i < 64; ++i) {
    if (set >> i & 1) {
      if (!first) out << ',';
      out << i;
      first = false;
    }
  }
  out << '}';
  return out.str();
}

int length(const Permutation& w) {
  const int n = w.size();
  std::uint64_t later = 0;
  int inv = 0;
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t bit = std::uint64_t{1} << w[i];
    inv += std::popcount(later & (bit - 1));
    later |= bit;
  }
  return inv;
}

Permutation compose(const Permutation& u, const Permutation& v) {
  check_same_size(u, v, "compose");
  std::vector<std::uint8_t> out(static_cast<std::size_t>(u.size()));
  for (int i = 0; i < u.size(); ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(u[v[i]]);
  return Permutation::from_bytes_unchecked(out);
}

GeneratorSet right_descents(const Permutation& w) {
  GeneratorSet d = 0;
  for (int i = 1; i < w.size(); ++i) {
    if (w[i - 1] > w[i]) d |= GeneratorSet{1} << i;
  }
  return d;
}

GeneratorSet left_descents(const Permutation& w) {
  // s_i is a left descent iff value i appears before value i-1.
  std::array<int, kMaxPermSize> pos{};
  for (int i = 0; i < w.size(); ++i) pos[static_cast<std::size_t>(w[i])] = i;
  GeneratorSet d = 0;
  for (int i = 1; i < w.size(); ++i) {
    if (pos[static_cast<std::size_t>(i - 1)] > pos[static_cast<std::size_t>(i)]) d |= GeneratorSet{1} << i;
  }
  return d;
}

int rank_count(const Permutation& w, int p, int q) {
  if (p < 0) return 0;
  if (q <= 0) return std::min(p, w.size() - 1) + 1;
  if (q >= w.size()) return 0;
  return std::popcount(w.prefix_mask(p) >> q);
}

int diff(const Permutation& x, const Permutation& w, int p, int q) {
  check_same_size(x, w, "diff");
  return rank_count(w, p, q) - rank_count(x, p, q);
}

bool bruhat_leq(const Permutation& x, const Permutation& w) {
  check_same_size(x, w, "bruhat_leq");
  const int n = x.size();
  std::uint64_t sx = 0;
  std::uint64_t sw = 0;
  for (int p = 0; p + 1 < n; ++p) {
    sx |= std::uint64_t{1} << x[p];
    sw |= std::uint64_t{1} << w[p];
    if (sx == sw) continue;
    for (int q = 1; q < n; ++q) {
      if (std::popcount(sw >> q) < std::popcount(sx >> q)) return false;
    }
  }
  return true;
}

std::vector<Permutation> lower_covers(const Permutation& w) {
  std::vector<Permutation> out;
  const int n = w.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w[i] < w[j]) continue;
      bool blocked = false;
      for (int k = i + 1; k < j && !blocked; ++k) blocked = w[j] < w[k] && w[k] < w[i];
      if (!blocked) out.push_back(w.swap_positions(i, j));
    }
  }
  return out;
}

bool covers(const Permutation& x, const Permutation& w) {
  check_same_size(x, w, "covers");
  return length(w) == length(x) + 1 && bruhat_leq(x, w);
}

Pair::Pair(Permutation x_, Permutation w_) : x(std::move(x_)), w(std::move(w_)) {
  check_same_size(x, w, "pair");
}

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("composition: no parts");
  for (int p : parts_) {
    if (p < 1) throw DomainError("composition: part " + std::to_string(p) + " is not positive");
    total_ += p;
  }
  if (total_ > kMaxPermSize) throw DomainError("composition: total exceeds 64");
}

std::string Composition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

Permutation x_alpha(const Composition& alpha) {
  std::vector<std::uint8_t> word;
  int top = alpha.total();
  for (int part : alpha.parts()) {
    for (int v = top - part; v < top; ++v) word.push_back(static_cast<std::uint8_t>(v));
    top -= part;
  }
  return Permutation::from_bytes_unchecked(word);
}

std::optional<Composition> block_composition(const Permutation& w) {
  const int n = w.size();
  std::vector<int> parts;
  int expected_top = n - 1;
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && w[j + 1] == w[j] + 1) ++j;
    if (w[j] != expected_top) return std::nullopt;
    parts.push_back(j - i + 1);
    expected_top = w[i] - 1;
    i = j + 1;
  }
  if (expected_top != -1) return std::nullopt;
  return Composition(std::move(parts));
}

std::vector<Permutation> block_permutations(int n) {
  std::vector<Permutation> out;
  if (n < 1) return out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int i = 0; i + 1 < n; ++i) {
      if (mask >> i & 1) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.push_back(x_alpha(Composition(std::move(parts))));
  }
  return out;
}

bool is_crosshatch(const Permutation& x, const Permutation& w) {
  check_same_size(x, w, "is_crosshatch");
  return bruhat_leq(x, w) && block_composition(compose(x, long_word(x.size()))).has_value() &&
         block_composition(w).has_value();
}

DiffGrid::DiffGrid(const Permutation& x, const Permutation& w) : n_(x.size()) {
  check_same_size(x, w, "diff grid");
  cells_.assign(static_cast<std::size_t>(n_ * (n_ + 1)), 0);
  std::uint64_t sx = 0;
  std::uint64_t sw = 0;
  for (int p = 0; p < n_; ++p) {
    sx |= std::uint64_t{1} << x[p];
    sw |= std::uint64_t{1} << w[p];
    for (int q = 1; q < n_; ++q) {
      cells_[static_cast<std::size_t>(p * (n_ + 1) + q)] = std::popcount(sw >> q) - std::popcount(sx >> q);
    }
  }
}

int DiffGrid::at(int p, int q) const noexcept {
  if (p < 0 || p >= n_ || q <= 0 || q >= n_) return 0;
  return cells_[static_cast<std::size_t>(p * (n_ + 1) + q)];
}

int DiffGrid::min_value() const noexcept {
  return cells_.empty() ? 0 : *std::min_element(cells_.begin(), cells_.end());
}

}  // namespace klmu
