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

#ifndef KLMU_CENSUS_HPP
#define KLMU_CENSUS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klmu/classes.hpp"
#include "klmu/interval.hpp"
#include "klmu/kl.hpp"
#include "klmu/perm.hpp"

namespace klmu {

/// Extremal pairs x < w of S_n: w in lexicographic order, and for each w
/// the extremal x in lexicographic order. Pairs with x = w are skipped.
class ExtremalPairStream {
 public:
  explicit ExtremalPairStream(int n);
  bool next(Pair& out);

 private:
  int n_;
  std::vector<int> w_word_;
  bool started_ = false;
  bool done_ = false;
  Permutation w_;
  std::optional<IntervalEnumerator> inner_;
};

std::vector<Pair> extremal_pairs(int n);

struct CensusOptions {
  int threads = 1;
  /// Skipping the irreducibility pass leaves irreducible and minimal unset.
  bool irreducibility = true;
  std::size_t node_limit = kDefaultNodeLimit;
};

struct CensusReport {
  int n = 0;
  std::uint64_t extremal_pairs = 0;
  std::uint64_t uncompressible_extremal = 0;
  /// Extremal pairs with odd gap at least 3 and mu > 0.
  std::uint64_t mu_positive_extremal = 0;
  /// Extremal pairs with gap 1, all of which have mu = 1.
  std::uint64_t extremal_covers = 0;
  /// Uncompressible pairs counted in mu_positive_extremal.
  std::uint64_t mu_positive_uncompressible = 0;
  std::optional<std::uint64_t> irreducible;
  std::optional<std::uint64_t> minimal;
  BigInt max_coefficient = 0;
  std::uint64_t distinct_nonconstant_polys = 0;
  /// Nonzero mu over all pairs of S_n, ascending.
  std::vector<BigInt> mu_values;

  std::string to_text() const;
};

/// Reports for S_1 .. S_n from one sweep; element m-1 describes S_m.
std::vector<CensusReport> census_series(int n, KlCache& cache, const CensusOptions& options = {});
CensusReport census_stats(int n, KlCache& cache, const CensusOptions& options = {});

/// M(n), built as M(n-1) together with mu of the irreducible pairs of S_n,
/// starting from M(1) = {} and M(2) = {1}.
std::vector<BigInt> mu_values(int n, KlCache& cache, IrreducibilityChecker& checker);
std::vector<BigInt> mu_values(int n, KlCache& cache);

/// Extremal pairs (x, w), x != w, with w in X_n and x the reverse of some
/// a in X_n.
std::uint64_t crosshatch_census(int n);

}  // namespace klmu

#endif  // KLMU_CENSUS_HPP
