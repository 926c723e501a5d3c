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

#include "klmu/census.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "absl/container/flat_hash_set.h"
#include "klmu/detail/packed.hpp"
#include "klmu/error.hpp"
#include "klmu/moves.hpp"

namespace klmu {
namespace {

using detail::PackedPair;

struct Tally {
  std::uint64_t extremal = 0;
  std::uint64_t uncompressible = 0;
  std::uint64_t mu_positive = 0;
  std::uint64_t covers = 0;
  std::uint64_t mu_positive_uncompressible = 0;
  BigInt max_coefficient = 0;
  absl::flat_hash_set<const IntPoly*> polys;
  std::set<BigInt> mus;
  std::vector<PackedPair> candidates;  // odd and uncompressible

  void merge(Tally&& o) {
    extremal += o.extremal;
    uncompressible += o.uncompressible;
    mu_positive += o.mu_positive;
    covers += o.covers;
    mu_positive_uncompressible += o.mu_positive_uncompressible;
    if (o.max_coefficient > max_coefficient) max_coefficient = o.max_coefficient;
    polys.insert(o.polys.begin(), o.polys.end());
    mus.insert(o.mus.begin(), o.mus.end());
    candidates.insert(candidates.end(), o.candidates.begin(), o.candidates.end());
  }
};

// All extremal pairs below w; registers the mu list of w for later levels.
void sweep_column(const Permutation& w, KlCache& cache, Tally& t) {
  const int lw = length(w);
  std::vector<KlCache::MuEntry> entries;
  IntervalEnumerator it(Permutation::identity(w.size()), w, right_descents(w), left_descents(w));
  Permutation x;
  while (it.next(x)) {
    if (x == w) continue;
    ++t.extremal;
    const Pair p(x, w);
    const bool uncompressible = !is_compressible(p);
    if (uncompressible) ++t.uncompressible;
    const IntPoly& poly = cache.poly_ref(x, w);
    if (poly.degree() >= 1 && t.polys.insert(&poly).second && poly.max_coefficient() > t.max_coefficient) {
      t.max_coefficient = poly.max_coefficient();
    }
    const int gap = lw - length(x);
    if (gap % 2 == 0) continue;
    if (uncompressible) t.candidates.emplace_back(p);
    if (gap == 1) {
      ++t.covers;
      t.mus.insert(1);
      continue;
    }
    const auto top = static_cast<std::size_t>((gap - 1) / 2);
    if (top >= poly.coeffs().size() || poly.coeffs()[top] == 0) continue;
    ++t.mu_positive;
    if (uncompressible) ++t.mu_positive_uncompressible;
    t.mus.insert(poly.coeffs()[top]);
    entries.push_back({detail::pack(x), &poly.coeffs()[top]});
  }
  cache.register_mu_list(w, std::move(entries));
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&](int id) {
    try {
      for (std::size_t i = next++; i < count; i = next++) fn(i, id);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = count;
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

CensusReport sweep_group(int m, KlCache& cache, const CensusOptions& options) {
  const int threads = std::max(1, options.threads);
  std::vector<std::vector<Permutation>> levels(static_cast<std::size_t>(m * (m - 1) / 2 + 1));
  std::vector<int> word(static_cast<std::size_t>(m));
  std::iota(word.begin(), word.end(), 0);
  do {
    Permutation w(word);
    levels[static_cast<std::size_t>(length(w))].push_back(w);
  } while (std::next_permutation(word.begin(), word.end()));

  Tally total;
  for (const auto& level : levels) {
    std::vector<Tally> local(static_cast<std::size_t>(threads));
    parallel_for(level.size(), threads,
                 [&](std::size_t i, int id) { sweep_column(level[i], cache, local[static_cast<std::size_t>(id)]); });
    for (auto& t : local) total.merge(std::move(t));
  }

  CensusReport r;
  r.n = m;
  r.extremal_pairs = total.extremal;
  r.uncompressible_extremal = total.uncompressible;
  r.mu_positive_extremal = total.mu_positive;
  r.extremal_covers = total.covers;
  r.mu_positive_uncompressible = total.mu_positive_uncompressible;
  r.max_coefficient = total.max_coefficient;
  r.distinct_nonconstant_polys = total.polys.size();
  r.mu_values.assign(total.mus.begin(), total.mus.end());

  if (options.irreducibility) {
    IrreducibilityChecker checker(options.node_limit);
    std::sort(total.candidates.begin(), total.candidates.end());
    std::vector<std::uint8_t> irreducible(total.candidates.size(), 0);
    std::vector<std::uint8_t> minimal(total.candidates.size(), 0);
    parallel_for(total.candidates.size(), threads, [&](std::size_t i, int) {
      const Pair p = total.candidates[i].unpacked();
      if (!checker.is_irreducible(p)) return;
      irreducible[i] = 1;
      minimal[i] = cache.mu(p.x, p.w) > 0 ? 1 : 0;
    });
    r.irreducible = std::accumulate(irreducible.begin(), irreducible.end(), std::uint64_t{0});
    r.minimal = std::accumulate(minimal.begin(), minimal.end(), std::uint64_t{0});
  }
  return r;
}

}  // namespace

ExtremalPairStream::ExtremalPairStream(int n) : n_(n), w_word_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 1 || n > kMaxPermSize) throw DomainError("extremal pairs: size out of range");
  std::iota(w_word_.begin(), w_word_.end(), 0);
}

bool ExtremalPairStream::next(Pair& out) {
  while (!done_) {
    if (inner_) {
      Permutation x;
      while (inner_->next(x)) {
        if (!(x == w_)) {
          out = Pair(x, w_);
          return true;
        }
      }
      inner_.reset();
      if (!std::next_permutation(w_word_.begin(), w_word_.end())) {
        done_ = true;
        return false;
      }
    }
    w_ = Permutation(w_word_);
    inner_.emplace(Permutation::identity(n_), w_, right_descents(w_), left_descents(w_));
  }
  return false;
}

std::vector<Pair> extremal_pairs(int n) {
  std::vector<Pair> out;
  ExtremalPairStream stream(n);
  Pair p(Permutation::identity(1), Permutation::identity(1));
  while (stream.next(p)) out.push_back(p);
  return out;
}

std::vector<CensusReport> census_series(int n, KlCache& cache, const CensusOptions& options) {
  if (n < 1) throw DomainError("census: n must be positive");
  detail::require_packable(n, "census");
  std::vector<CensusReport> out;
  for (int m = 1; m <= n; ++m) out.push_back(sweep_group(m, cache, options));
  return out;
}

CensusReport census_stats(int n, KlCache& cache, const CensusOptions& options) {
  if (n < 1) throw DomainError("census: n must be positive");
  detail::require_packable(n, "census");
  CensusOptions quiet = options;
  quiet.irreducibility = false;
  for (int m = 1; m < n; ++m) sweep_group(m, cache, quiet);
  return sweep_group(n, cache, options);
}

std::string CensusReport::to_text() const {
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string("missing"); };
  std::string mus;
  for (const BigInt& m : mu_values) mus += (mus.empty() ? "" : ",") + m.str();
  std::string out;
  out += "n: " + std::to_string(n) + "\n";
  out += "|EP_n|: " + std::to_string(extremal_pairs) + "\n";
  out += "|unc EP_n|: " + std::to_string(uncompressible_extremal) + "\n";
  out += "|EP_mu>0|: " + std::to_string(mu_positive_uncompressible) + "\n";
  out += "|EP_mu>0| compressible included: " + std::to_string(mu_positive_extremal) + "\n";
  out += "|EP_mu>0| covers: " + std::to_string(extremal_covers) + "\n";
  out += "|irr|: " + opt(irreducible) + "\n";
  out += "|N(n,0)-minimal|: " + opt(minimal) + "\n";
  out += "max coeff: " + max_coefficient.str() + "\n";
  out += "|{P_x,w}|: " + std::to_string(distinct_nonconstant_polys) + "\n";
  out += "M(n): {" + mus + "}\n";
  return out;
}

std::vector<BigInt> mu_values(int n, KlCache& cache, IrreducibilityChecker& checker) {
  if (n < 1) throw DomainError("mu values: n must be positive");
  std::set<BigInt> values;
  if (n >= 2) values.insert(1);
  for (int m = 3; m <= n; ++m) {
    for (const Pair& p : irreducible_pairs(m, checker)) {
      BigInt v = cache.mu(p.x, p.w);
      if (v > 0) values.insert(std::move(v));
    }
  }
  return {values.begin(), values.end()};
}

std::vector<BigInt> mu_values(int n, KlCache& cache) {
  IrreducibilityChecker checker;
  return mu_values(n, cache, checker);
}

std::uint64_t crosshatch_census(int n) {
  if (n < 1 || n > 12) throw DomainError("crosshatch census: n must lie in 1..12");
  const std::vector<Permutation> blocks = block_permutations(n);
  std::uint64_t count = 0;
  for (const Permutation& a : blocks) {
    const Permutation x = compose(a, Permutation::long_word(n));
    for (const Permutation& w : blocks) {
      if (!(x == w) && is_extremal(Pair(x, w))) ++count;
    }
  }
  return count;
}

}  // namespace klmu
