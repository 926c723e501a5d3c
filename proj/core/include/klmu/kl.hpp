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

#ifndef KLMU_KL_HPP
#define KLMU_KL_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "klmu/perm.hpp"
#include "klmu/poly.hpp"

namespace klmu {

class Database;
struct PairKey;

/// x <= w, lds(x) contains lds(w) and rds(x) contains rds(w).
bool is_extremal(const Pair& pair);

/// Moves x up through the right and left descents of w until the pair is
/// extremal. P_{x,w} is unchanged. Expects x <= w.
Pair extremalize(const Pair& pair);

/// Alternates extremalize with compression of naked capitols (leftmost
/// first, recomputed after each deletion) until neither applies. The result
/// is an uncompressible extremal pair in some S_m with the same P_{x,w}.
/// An equal pair compresses all the way down to S_1. Expects x <= w.
Pair normalize(const Pair& pair);

/// Cache key for polynomials: least of (x,w), (x^-1,w^-1) and their
/// conjugates by w0, all of which share P_{x,w}.
PairKey poly_key(const Pair& pair);

enum class DescentChoice { kLargest, kSmallest };

struct KlOptions {
  DescentChoice descent = DescentChoice::kLargest;
  /// Zero means unbounded; otherwise exceeding it raises ResourceError.
  std::size_t max_entries = 0;
  /// Verify constant term, sign and degree bound of every new polynomial.
  bool check_invariants = true;
};

struct KlStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t db_hits = 0;
  std::size_t entries = 0;
  std::size_t distinct_polys = 0;
  std::size_t mu_lists = 0;
};

/// Memo of P_{x,w} keyed by normalized pairs, plus per-element mu lists.
///
/// Polynomials are interned: every distinct value is stored once and
/// references returned by poly_ref() stay valid for the cache's lifetime.
/// All member functions are safe to call concurrently; two threads may
/// compute the same entry, and the second insert must agree with the first.
class KlCache {
 public:
  /// One non-cover mu entry of an element v: z < v with mu(z,v) > 0.
  struct MuEntry {
    std::uint64_t z;
    const BigInt* mu;
  };

  explicit KlCache(KlOptions options = {});
  ~KlCache();
  KlCache(const KlCache&) = delete;
  KlCache& operator=(const KlCache&) = delete;

  /// Reads fall back to `db` on a miss; new entries are written to it.
  void attach(Database* db);

  /// P_{x,w}; sizes above 16 raise DomainError.
  const IntPoly& poly_ref(const Permutation& x, const Permutation& w);
  IntPoly poly(const Permutation& x, const Permutation& w) { return poly_ref(x, w); }
  BigInt mu(const Permutation& x, const Permutation& w);
  BigInt mu_bracket(const Permutation& x, const Permutation& w);

  /// Interns `p` and returns its stable address.
  const IntPoly* intern(IntPoly p);

  /// Records every non-cover z < v with mu(z,v) > 0. Correction sums for
  /// elements with a registered list skip the interval search.
  void register_mu_list(const Permutation& v, std::vector<MuEntry> entries);
  bool has_mu_list(const Permutation& v) const;
  void clear_mu_lists();

  KlStats stats() const;
  const KlOptions& options() const noexcept { return options_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  KlOptions options_;
};

IntPoly kl_poly(const Permutation& x, const Permutation& w, KlCache& cache);
BigInt mu(const Permutation& x, const Permutation& w, KlCache& cache);
/// mu(x,w) if x <= w, mu(w,x) if w <= x, zero otherwise.
BigInt mu_bracket(const Permutation& x, const Permutation& w, KlCache& cache);

/// Independent oracle: the bare recursion over the whole of S_n with a
/// memo keyed by raw pairs, no extremal, compression or symmetry shortcuts.
/// Limited to n <= 7.
class NaiveKl {
 public:
  explicit NaiveKl(int n);
  ~NaiveKl();
  NaiveKl(const NaiveKl&) = delete;
  NaiveKl& operator=(const NaiveKl&) = delete;

  IntPoly poly(const Permutation& x, const Permutation& w);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

IntPoly kl_poly_naive(const Permutation& x, const Permutation& w);

}  // namespace klmu

#endif  // KLMU_KL_HPP
