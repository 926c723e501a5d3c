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

#include "klmu/kl.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>
#include <shared_mutex>

#include "absl/container/flat_hash_map.h"
#include "absl/container/node_hash_set.h"
#include "klmu/detail/packed.hpp"
#include "klmu/error.hpp"
#include "klmu/interval.hpp"
#include "klmu/moves.hpp"
#include "klmu/store.hpp"

namespace klmu {
namespace {

using detail::PackedPair;
using detail::PackedPerm;
using detail::pack;

const BigInt kOneCoefficient = 1;

// Leftmost naked capitol, or -1.
int first_naked_capitol(const Pair& pair) {
  const int n = pair.size();
  std::uint64_t sx = 0;
  std::uint64_t sw = 0;
  auto d = [n](std::uint64_t mw, std::uint64_t mx, int q) {
    return q >= n ? 0 : std::popcount(mw >> q) - std::popcount(mx >> q);
  };
  for (int i = 0; i < n; ++i) {
    const std::uint64_t px = sx;
    const std::uint64_t pw = sw;
    sx |= std::uint64_t{1} << pair.x[i];
    sw |= std::uint64_t{1} << pair.w[i];
    if (pair.x[i] != pair.w[i]) continue;
    const int v = pair.x[i];
    if (d(sw, sx, v) == 0 && d(pw, px, v) == 0 && d(sw, sx, v + 1) == 0 && d(pw, px, v + 1) == 0) {
      return i;
    }
  }
  return -1;
}

Permutation conjugate_by_long_word(const Permutation& p) {
  const int n = p.size();
  std::array<std::uint8_t, kMaxPermSize> word{};
  for (int i = 0; i < n; ++i) word[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n - 1 - p[n - 1 - i]);
  return Permutation::from_bytes_unchecked({word.data(), static_cast<std::size_t>(n)});
}

Pair least_poly_variant(const Pair& p) {
  const Permutation xi = p.x.inverse();
  const Permutation wi = p.w.inverse();
  std::array<Pair, 4> variants = {
      p, Pair(xi, wi), Pair(conjugate_by_long_word(p.x), conjugate_by_long_word(p.w)),
      Pair(conjugate_by_long_word(xi), conjugate_by_long_word(wi))};
  return *std::min_element(variants.begin(), variants.end());
}

PackedPair packed_poly_key(const Pair& p) {
  const int n = p.size();
  std::array<std::uint8_t, 16> xi{}, wi{};
  for (int i = 0; i < n; ++i) {
    xi[static_cast<std::size_t>(p.x[i])] = static_cast<std::uint8_t>(i);
    wi[static_cast<std::size_t>(p.w[i])] = static_cast<std::uint8_t>(i);
  }
  auto pack_bytes = [n](auto&& at) {
    std::uint64_t bits = 0;
    for (int i = 0; i < n; ++i) bits |= std::uint64_t(at(i)) << (60 - 4 * i);
    return bits;
  };
  const auto sz = [](int i) { return static_cast<std::size_t>(i); };
  const std::array<PackedPair, 4> variants = {
      PackedPair(pack(p.x), pack(p.w), n),
      PackedPair(pack_bytes([&](int i) { return xi[sz(i)]; }), pack_bytes([&](int i) { return wi[sz(i)]; }), n),
      PackedPair(pack_bytes([&](int i) { return n - 1 - p.x[n - 1 - i]; }),
                 pack_bytes([&](int i) { return n - 1 - p.w[n - 1 - i]; }), n),
      PackedPair(pack_bytes([&](int i) { return n - 1 - xi[sz(n - 1 - i)]; }),
                 pack_bytes([&](int i) { return n - 1 - wi[sz(n - 1 - i)]; }), n)};
  return *std::min_element(variants.begin(), variants.end());
}

PairKey to_pair_key(const PackedPair& k) {
  const Pair p = k.unpacked();
  return PairKey{k.n, p.x.compact(), p.w.compact()};
}

std::size_t shard_of(std::uint64_t a, std::uint64_t b, std::size_t shards) {
  const std::uint64_t h = (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL);
  return static_cast<std::size_t>((h ^ (h >> 29)) % shards);
}

}  // namespace

bool is_extremal(const Pair& pair) {
  const GeneratorSet dr = right_descents(pair.w);
  const GeneratorSet dl = left_descents(pair.w);
  return (right_descents(pair.x) & dr) == dr && (left_descents(pair.x) & dl) == dl &&
         bruhat_leq(pair.x, pair.w);
}

Pair extremalize(const Pair& pair) {
  const int n = pair.size();
  const GeneratorSet dr = right_descents(pair.w);
  const GeneratorSet dl = left_descents(pair.w);
  std::array<std::uint8_t, kMaxPermSize> word{};
  std::array<std::uint8_t, kMaxPermSize> pos{};
  for (int i = 0; i < n; ++i) {
    word[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(pair.x[i]);
    pos[static_cast<std::size_t>(pair.x[i])] = static_cast<std::uint8_t>(i);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    bool moved = true;
    while (moved) {
      moved = false;
      for (GeneratorSet r = dr; r; r &= r - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(r));
        if (word[i - 1] < word[i]) {
          std::swap(word[i - 1], word[i]);
          pos[word[i - 1]] = static_cast<std::uint8_t>(i - 1);
          pos[word[i]] = static_cast<std::uint8_t>(i);
          moved = changed = true;
        }
      }
    }
    for (GeneratorSet l = dl; l; l &= l - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(l));
      if (pos[i - 1] < pos[i]) {
        std::swap(word[pos[i - 1]], word[pos[i]]);
        std::swap(pos[i - 1], pos[i]);
        changed = true;
      }
    }
  }
  return Pair(Permutation::from_bytes_unchecked({word.data(), static_cast<std::size_t>(n)}), pair.w);
}

Pair normalize(const Pair& pair) {
  Pair p = pair;
  while (true) {
    p = extremalize(p);
    bool compressed = false;
    while (p.size() > 1) {
      const int i = first_naked_capitol(p);
      if (i < 0) break;
      p = Pair(p.x.erase_at(i), p.w.erase_at(i));
      compressed = true;
    }
    if (!compressed) return p;
  }
}

PairKey poly_key(const Pair& pair) {
  const Pair least = least_poly_variant(pair);
  return PairKey{pair.size(), least.x.compact(), least.w.compact()};
}

struct KlCache::Impl {
  static constexpr std::size_t kShards = 64;

  struct PolyShard {
    std::mutex m;
    absl::node_hash_set<IntPoly> set;
  };
  struct EntryShard {
    std::shared_mutex m;
    absl::flat_hash_map<PackedPair, const IntPoly*> map;
  };
  struct MuShard {
    std::mutex m;
    absl::flat_hash_map<PackedPerm, std::shared_ptr<const std::vector<MuEntry>>> map;
  };

  std::array<PolyShard, kShards> polys;
  std::array<EntryShard, kShards> entries;
  std::array<MuShard, kShards> mus;
  std::atomic<std::uint64_t> hits{0};
  std::atomic<std::uint64_t> misses{0};
  std::atomic<std::uint64_t> db_hits{0};
  std::atomic<std::size_t> entry_count{0};
  std::atomic<std::size_t> mu_count{0};
  Database* db = nullptr;
  const IntPoly* zero = nullptr;
  const IntPoly* one = nullptr;

  const IntPoly* find(const PackedPair& key) {
    auto& shard = entries[shard_of(key.x, key.w, kShards)];
    std::shared_lock lock(shard.m);
    auto it = shard.map.find(key);
    return it == shard.map.end() ? nullptr : it->second;
  }

  std::shared_ptr<const std::vector<MuEntry>> find_mu_list(const Permutation& v) {
    const PackedPerm key{pack(v), static_cast<std::uint8_t>(v.size())};
    auto& shard = mus[shard_of(key.bits, key.n, kShards)];
    std::lock_guard lock(shard.m);
    auto it = shard.map.find(key);
    return it == shard.map.end() ? nullptr : it->second;
  }
};

KlCache::KlCache(KlOptions options) : impl_(std::make_unique<Impl>()), options_(options) {
  impl_->zero = intern(IntPoly());
  impl_->one = intern(IntPoly::one());
}

KlCache::~KlCache() = default;

void KlCache::attach(Database* db) { impl_->db = db; }

const IntPoly* KlCache::intern(IntPoly p) {
  const std::size_t h = absl::Hash<IntPoly>()(p);
  auto& shard = impl_->polys[(h >> 40) % Impl::kShards];
  std::lock_guard lock(shard.m);
  return &*shard.set.insert(std::move(p)).first;
}

void KlCache::register_mu_list(const Permutation& v, std::vector<MuEntry> entries) {
  detail::require_packable(v.size(), "mu list");
  const PackedPerm key{pack(v), static_cast<std::uint8_t>(v.size())};
  auto& shard = impl_->mus[shard_of(key.bits, key.n, Impl::kShards)];
  auto value = std::make_shared<const std::vector<MuEntry>>(std::move(entries));
  std::lock_guard lock(shard.m);
  if (shard.map.insert_or_assign(key, std::move(value)).second) ++impl_->mu_count;
}

bool KlCache::has_mu_list(const Permutation& v) const { return impl_->find_mu_list(v) != nullptr; }

void KlCache::clear_mu_lists() {
  for (auto& shard : impl_->mus) {
    std::lock_guard lock(shard.m);
    shard.map.clear();
  }
  impl_->mu_count = 0;
}

KlStats KlCache::stats() const {
  KlStats s;
  s.hits = impl_->hits;
  s.misses = impl_->misses;
  s.db_hits = impl_->db_hits;
  s.entries = impl_->entry_count;
  s.mu_lists = impl_->mu_count;
  for (auto& shard : impl_->polys) {
    std::lock_guard lock(shard.m);
    s.distinct_polys += shard.set.size();
  }
  return s;
}

namespace {

struct Term {
  Permutation z;
  const BigInt* mu;
};

// Every z with x <= z < v, zs < z and mu(z,v) > 0, where s swaps
// positions s-1 and s.
std::vector<Term> correction_terms(KlCache& cache, const KlCache::MuEntry* list_begin,
                                   const KlCache::MuEntry* list_end, bool has_list,
                                   const Permutation& x, const Permutation& v, int s) {
  std::vector<Term> terms;
  for (const Permutation& z : lower_covers(v)) {
    if (z[s - 1] > z[s] && bruhat_leq(x, z)) terms.push_back({z, &kOneCoefficient});
  }
  const int n = v.size();
  if (has_list) {
    for (const auto* e = list_begin; e != list_end; ++e) {
      Permutation z = detail::unpack(e->z, n);
      if (z[s - 1] > z[s] && bruhat_leq(x, z)) terms.push_back({z, e->mu});
    }
    return terms;
  }
  const int lv = length(v);
  IntervalEnumerator it(x, v, right_descents(v) | (GeneratorSet{1} << s), left_descents(v));
  Permutation z;
  while (it.next(z)) {
    const int gap = lv - length(z);
    if (gap < 3 || gap % 2 == 0) continue;
    const IntPoly& pz = cache.poly_ref(z, v);
    const int top = (gap - 1) / 2;
    if (top < static_cast<int>(pz.coeffs().size()) && pz.coeffs()[static_cast<std::size_t>(top)] > 0) {
      terms.push_back({z, &pz.coeffs()[static_cast<std::size_t>(top)]});
    }
  }
  return terms;
}

void check_kl_invariants(const Pair& p, const IntPoly& poly) {
  const int bound = (length(p.w) - length(p.x) - 1) / 2;
  bool ok = !poly.is_zero() && poly.coeffs().front() == 1 && poly.degree() <= bound;
  for (const BigInt& c : poly.coeffs()) ok = ok && c >= 0;
  if (!ok) {
    throw Error("KL invariant violated for " + p.to_string() + ": " + poly.to_string());
  }
}

}  // namespace

const IntPoly& KlCache::poly_ref(const Permutation& x, const Permutation& w) {
  if (x.size() != w.size()) throw DomainError("kl_poly: size mismatch");
  detail::require_packable(x.size(), "kl_poly");
  if (x == w) return *impl_->one;
  if (!bruhat_leq(x, w)) return *impl_->zero;
  const Pair p = normalize(Pair(x, w));
  if (p.x == p.w) return *impl_->one;

  const PackedPair key = packed_poly_key(p);
  if (const IntPoly* hit = impl_->find(key)) {
    ++impl_->hits;
    return *hit;
  }
  ++impl_->misses;

  const IntPoly* result = nullptr;
  if (impl_->db) {
    if (auto stored = impl_->db->get(to_pair_key(key))) {
      ++impl_->db_hits;
      result = intern(std::move(*stored));
    }
  }
  if (!result) {
    const GeneratorSet dr = right_descents(p.w);
    const int s = options_.descent == DescentChoice::kLargest ? 63 - std::countl_zero(dr)
                                                              : std::countr_zero(dr);
    const Permutation v = p.w.swap_positions(s - 1, s);
    const Permutation xs = p.x.swap_positions(s - 1, s);
    // x is extremal, so s is a right descent of x as well: c_s(x) = 1.
    IntPoly acc;
    acc.add_shifted(poly_ref(p.x, v), 1, 1);
    acc.add_shifted(poly_ref(xs, v), 0, 1);
    const int lw = length(p.w);
    const auto list = impl_->find_mu_list(v);
    const MuEntry* first = list ? list->data() : nullptr;
    const MuEntry* last = list ? list->data() + list->size() : nullptr;
    for (const Term& t : correction_terms(*this, first, last, list != nullptr, p.x, v, s)) {
      acc.add_shifted(poly_ref(p.x, t.z), (lw - length(t.z)) / 2, -*t.mu);
    }
    if (options_.check_invariants) check_kl_invariants(p, acc);
    result = intern(std::move(acc));
    if (impl_->db) impl_->db->put(to_pair_key(key), *result);
  }

  auto& shard = impl_->entries[shard_of(key.x, key.w, Impl::kShards)];
  {
    std::unique_lock lock(shard.m);
    auto [it, inserted] = shard.map.try_emplace(key, result);
    if (!inserted) {
      if (it->second != result) {
        throw CorruptionError("kl cache: conflicting values for " + to_pair_key(key).to_string());
      }
      return *result;
    }
  }
  const std::size_t count = ++impl_->entry_count;
  if (options_.max_entries != 0 && count > options_.max_entries) {
    throw ResourceError("kl cache: entry budget of " + std::to_string(options_.max_entries) +
                        " exceeded");
  }
  return *result;
}

BigInt KlCache::mu(const Permutation& x, const Permutation& w) {
  if (x.size() != w.size()) throw DomainError("mu: size mismatch");
  const int gap = length(w) - length(x);
  if (gap <= 0 || gap % 2 == 0) return 0;
  if (!bruhat_leq(x, w)) return 0;
  if (gap == 1) return 1;
  if (!is_extremal(Pair(x, w))) return 0;
  return poly_ref(x, w).coefficient((gap - 1) / 2);
}

BigInt KlCache::mu_bracket(const Permutation& x, const Permutation& w) {
  if (x.size() != w.size()) throw DomainError("mu_bracket: size mismatch");
  if (bruhat_leq(x, w)) return mu(x, w);
  if (bruhat_leq(w, x)) return mu(w, x);
  return 0;
}

IntPoly kl_poly(const Permutation& x, const Permutation& w, KlCache& cache) { return cache.poly(x, w); }
BigInt mu(const Permutation& x, const Permutation& w, KlCache& cache) { return cache.mu(x, w); }
BigInt mu_bracket(const Permutation& x, const Permutation& w, KlCache& cache) {
  return cache.mu_bracket(x, w);
}

}  // namespace klmu
