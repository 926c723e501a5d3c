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

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "klmu/error.hpp"
#include "klmu/kl.hpp"

namespace klmu {

struct NaiveKl::Impl {
  int n = 0;
  std::vector<Permutation> elements;
  std::map<Permutation, std::size_t> index;
  std::vector<int> lengths;
  std::vector<std::vector<std::size_t>> below;  // strict lower intervals, filled lazily
  std::vector<bool> below_ready;
  std::unordered_map<std::uint64_t, IntPoly> memo;

  explicit Impl(int size) : n(size) {
    std::vector<int> word(static_cast<std::size_t>(n));
    std::iota(word.begin(), word.end(), 0);
    do {
      index.emplace(Permutation(word), elements.size());
      elements.emplace_back(word);
      lengths.push_back(length(elements.back()));
    } while (std::next_permutation(word.begin(), word.end()));
    below.resize(elements.size());
    below_ready.assign(elements.size(), false);
  }

  const std::vector<std::size_t>& lower_interval(std::size_t iv) {
    if (!below_ready[iv]) {
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i != iv && bruhat_leq(elements[i], elements[iv])) below[iv].push_back(i);
      }
      below_ready[iv] = true;
    }
    return below[iv];
  }

  IntPoly poly(std::size_t ix, std::size_t iw) {
    if (ix == iw) return IntPoly::one();
    const Permutation& x = elements[ix];
    const Permutation& w = elements[iw];
    if (!bruhat_leq(x, w)) return IntPoly();
    const std::uint64_t key = ix * elements.size() + iw;
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int s = 1;
    while (w[s - 1] < w[s]) ++s;
    const Permutation vp = w.swap_positions(s - 1, s);
    const Permutation xsp = x.swap_positions(s - 1, s);
    const std::size_t iv = index.at(vp);
    const std::size_t ixs = index.at(xsp);
    const int c = lengths[ixs] < lengths[ix] ? 1 : 0;

    IntPoly result;
    result.add_shifted(poly(ix, iv), c, 1);
    result.add_shifted(poly(ixs, iv), 1 - c, 1);
    for (std::size_t iz : lower_interval(iv)) {
      const Permutation& z = elements[iz];
      if (z[s - 1] < z[s] || !bruhat_leq(x, z)) continue;
      const int gap = lengths[iv] - lengths[iz];
      if (gap % 2 == 0) continue;
      const BigInt m = poly(iz, iv).coefficient((gap - 1) / 2);
      if (m == 0) continue;
      result.add_shifted(poly(ix, iz), (lengths[iw] - lengths[iz]) / 2, -m);
    }
    memo.emplace(key, result);
    return result;
  }
};

NaiveKl::NaiveKl(int n) {
  if (n < 1 || n > 7) throw DomainError("naive KL oracle supports 1 <= n <= 7");
  impl_ = std::make_unique<Impl>(n);
}

NaiveKl::~NaiveKl() = default;

IntPoly NaiveKl::poly(const Permutation& x, const Permutation& w) {
  if (x.size() != impl_->n || w.size() != impl_->n) throw DomainError("naive KL: size mismatch");
  return impl_->poly(impl_->index.at(x), impl_->index.at(w));
}

IntPoly kl_poly_naive(const Permutation& x, const Permutation& w) {
  if (x.size() != w.size()) throw DomainError("naive KL: size mismatch");
  NaiveKl oracle(x.size());
  return oracle.poly(x, w);
}

}  // namespace klmu
