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

#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "klmu/error.hpp"
#include "klmu/kl.hpp"
#include "klmu/moves.hpp"
#include "klmu/store.hpp"
#include "test_support.hpp"

namespace klmu {
namespace {

using testing::all_permutations;
using testing::pair;
using testing::perm;

Permutation conjugate(const Permutation& p) {
  const Permutation w0 = long_word(p.size());
  return compose(compose(w0, p), w0);
}

TEST(Extremal, Examples) {
  EXPECT_TRUE(is_extremal(pair("0213", "2301")));
  EXPECT_FALSE(is_extremal(pair("0123", "2301")));
  EXPECT_TRUE(is_extremal(pair("2301", "2301")));
  EXPECT_FALSE(is_extremal(pair("01", "10")));
  EXPECT_FALSE(is_extremal(pair("120", "201")));
  EXPECT_THROW(is_extremal(Pair(perm("01"), perm("012"))), DomainError);
}

TEST(Extremal, ExtremalizeExamples) {
  EXPECT_EQ(extremalize(pair("0123", "2301")), pair("0213", "2301"));
  EXPECT_EQ(extremalize(pair("0213", "2301")), pair("0213", "2301"));
  EXPECT_EQ(extremalize(pair("012", "210")), pair("210", "210"));
}

TEST(Extremal, ExtremalizeAgreesWithDefinition) {
  for (const auto& w : all_permutations(5)) {
    for (const auto& x : all_permutations(5)) {
      if (!bruhat_leq(x, w)) continue;
      const Pair e = extremalize(Pair(x, w));
      ASSERT_EQ(e.w, w);
      ASSERT_TRUE(bruhat_leq(x, e.x));
      ASSERT_TRUE(bruhat_leq(e.x, w));
      ASSERT_TRUE((right_descents(e.x) & right_descents(w)) == right_descents(w));
      ASSERT_TRUE((left_descents(e.x) & left_descents(w)) == left_descents(w));
      ASSERT_EQ(is_extremal(Pair(x, w)), e.x == x);
    }
  }
}

TEST(Extremal, NormalizeExamples) {
  // (01,10) is not extremal; x climbs to w and the diagonal pair compresses away.
  EXPECT_EQ(normalize(pair("012", "102")), pair("0", "0"));
  EXPECT_EQ(normalize(pair("0123", "1023")), pair("0", "0"));
  EXPECT_EQ(normalize(pair("0213", "2301")), pair("0213", "2301"));
  EXPECT_EQ(normalize(pair("10", "10")).size(), 1);
}

// Double decompression of an uncompressible extremal pair; the result has
// to be brought back through both extremalization and compression.
TEST(Extremal, NormalizeUndoesDoubleDecompression) {
  const Pair base = pair("0213", "2301");
  std::size_t built = 0;
  for (int i = 0; i <= 4; ++i) {
    for (int v = 0; v <= 4; ++v) {
      const auto once = decompress(base, i, v);
      if (!once) continue;
      for (int j = 0; j <= 5; ++j) {
        for (int u = 0; u <= 5; ++u) {
          const auto twice = decompress(*once, j, u);
          if (!twice) continue;
          ++built;
          ASSERT_EQ(normalize(*twice), base) << twice->to_string();
        }
      }
    }
  }
  EXPECT_GT(built, 0u);
}

TEST(Extremal, NormalizeIsAnUncompressibleExtremalFixedPoint) {
  NaiveKl naive(5);
  std::size_t multi_round = 0;
  for (const auto& w : all_permutations(5)) {
    for (const auto& x : all_permutations(5)) {
      if (!bruhat_leq(x, w)) continue;
      const Pair n = normalize(Pair(x, w));
      ASSERT_TRUE(is_extremal(n));
      ASSERT_TRUE(n.x == n.w ? n.size() == 1 : !is_compressible(n));
      ASSERT_EQ(normalize(n), n);
      ASSERT_LE(length(n.w) - length(n.x), length(w) - length(x));
      ASSERT_EQ(kl_poly_naive(n.x, n.w), naive.poly(x, w));
      // Compression of the extremalized pair alone is not always enough.
      const Pair e = extremalize(Pair(x, w));
      if (is_compressible(e) && e.x != e.w) {
        const Pair c = compress(e, naked_capitols(e).front());
        if (!is_extremal(c)) ++multi_round;
      }
    }
  }
  EXPECT_GT(multi_round, 0u);
}

TEST(Kl, Examples) {
  KlCache cache;
  EXPECT_EQ(kl_poly(perm("3012"), perm("3012"), cache), IntPoly::one());
  EXPECT_EQ(kl_poly(perm("01"), perm("10"), cache), IntPoly::one());
  EXPECT_EQ(kl_poly(perm("0213"), perm("2301"), cache), (IntPoly{1, 1}));
  EXPECT_EQ(kl_poly(perm("120"), perm("201"), cache), IntPoly());
  EXPECT_EQ(kl_poly(perm("216540873"), perm("567812340"), cache), (IntPoly{1, 8, 16, 11, 1}));
}

TEST(Kl, NaiveExamples) {
  EXPECT_EQ(kl_poly_naive(perm("01"), perm("10")), IntPoly::one());
  EXPECT_EQ(kl_poly_naive(perm("120"), perm("201")), IntPoly());
  EXPECT_EQ(kl_poly_naive(perm("0213"), perm("2301")), (IntPoly{1, 1}));
  EXPECT_THROW(NaiveKl(8), DomainError);
  EXPECT_THROW(kl_poly_naive(perm("01"), perm("012")), DomainError);
}

TEST(Kl, ExhaustiveAgreementWithNaiveOnS5) {
  KlCache cache;
  for (int n = 1; n <= 5; ++n) {
    NaiveKl oracle(n);
    for (const auto& w : all_permutations(n)) {
      for (const auto& x : all_permutations(n)) {
        ASSERT_EQ(kl_poly(x, w, cache), oracle.poly(x, w)) << Pair(x, w).to_string();
      }
    }
  }
}

TEST(Kl, RandomAgreementWithNaiveOnS6) {
  KlCache cache;
  NaiveKl naive(6);
  std::mt19937_64 rng(20);
  for (int i = 0; i < 10000; ++i) {
    Permutation x = testing::random_permutation(6, rng);
    Permutation w = testing::random_permutation(6, rng);
    if (i % 2 == 0 && !bruhat_leq(x, w) && bruhat_leq(w, x)) std::swap(x, w);
    ASSERT_EQ(kl_poly(x, w, cache), naive.poly(x, w)) << Pair(x, w).to_string();
  }
}

TEST(Kl, AllExtremalPairsOfS6MatchNaive) {
  KlCache cache;
  NaiveKl naive(6);
  for (const auto& w : all_permutations(6)) {
    for (const auto& x : all_permutations(6)) {
      if (!bruhat_leq(x, w) || !is_extremal(Pair(x, w))) continue;
      ASSERT_EQ(kl_poly(x, w, cache), naive.poly(x, w)) << Pair(x, w).to_string();
    }
  }
}

TEST(Kl, DescentChoiceDoesNotMatter) {
  KlCache largest;
  KlCache smallest(KlOptions{DescentChoice::kSmallest, 0, true});
  for (const auto& w : all_permutations(5)) {
    for (const auto& x : all_permutations(5)) {
      ASSERT_EQ(kl_poly(x, w, largest), kl_poly(x, w, smallest));
    }
  }
  for (const auto& w : all_permutations(6)) {
    const Permutation x = Permutation::identity(6);
    ASSERT_EQ(kl_poly(x, w, largest), kl_poly(x, w, smallest));
  }
}

TEST(Kl, DegreeBoundConstantTermAndSign) {
  KlCache cache(KlOptions{DescentChoice::kLargest, 0, false});
  for (const auto& w : all_permutations(6)) {
    for (const auto& x : all_permutations(6)) {
      if (x == w || !bruhat_leq(x, w)) continue;
      const IntPoly p = kl_poly(x, w, cache);
      ASSERT_EQ(p.coefficient(0), 1);
      ASSERT_LE(p.degree(), (length(w) - length(x) - 1) / 2);
      for (const BigInt& c : p.coeffs()) ASSERT_GE(c, 0);
    }
  }
}

TEST(Kl, RightDescentInvariance) {
  KlCache cache;
  for (const auto& w : all_permutations(5)) {
    const GeneratorSet dr = right_descents(w);
    for (const auto& x : all_permutations(5)) {
      if (!bruhat_leq(x, w)) continue;
      for (int s = 1; s < 5; ++s) {
        if ((dr >> s) & 1) {
          ASSERT_EQ(kl_poly(x, w, cache), kl_poly(x.swap_positions(s - 1, s), w, cache));
        }
      }
    }
  }
}

TEST(Kl, SymmetryInvariance) {
  NaiveKl naive(5);
  for (const auto& w : all_permutations(5)) {
    for (const auto& x : all_permutations(5)) {
      const IntPoly p = naive.poly(x, w);
      ASSERT_EQ(naive.poly(x.inverse(), w.inverse()), p);
      ASSERT_EQ(naive.poly(conjugate(x), conjugate(w)), p);
      ASSERT_EQ(poly_key(Pair(x, w)), poly_key(Pair(x.inverse(), w.inverse())));
      ASSERT_EQ(poly_key(Pair(x, w)), poly_key(Pair(conjugate(x), conjugate(w))));
    }
  }
}

TEST(Kl, MuExamples) {
  KlCache cache;
  EXPECT_EQ(mu(perm("021"), perm("201"), cache), 1);
  EXPECT_EQ(mu(perm("012"), perm("120"), cache), 0);
  EXPECT_EQ(mu(perm("0123"), perm("2301"), cache), 0);
  EXPECT_EQ(mu(perm("0432187659"), perm("4678091235"), cache), 4);
  EXPECT_EQ(mu_bracket(perm("10"), perm("01"), cache), 1);
  EXPECT_EQ(mu_bracket(perm("120"), perm("201"), cache), 0);
  EXPECT_EQ(mu_bracket(perm("120"), perm("102"), cache), 1);
}

TEST(Kl, MuMatchesTopCoefficient) {
  KlCache cache;
  NaiveKl naive(5);
  for (const auto& w : all_permutations(5)) {
    for (const auto& x : all_permutations(5)) {
      const int gap = length(w) - length(x);
      BigInt expected = 0;
      if (gap > 0 && gap % 2 == 1) expected = naive.poly(x, w).coefficient((gap - 1) / 2);
      ASSERT_EQ(mu(x, w, cache), expected) << Pair(x, w).to_string();
    }
  }
}

TEST(Kl, SizeLimits) {
  KlCache cache;
  std::vector<int> word(17);
  for (int i = 0; i < 17; ++i) word[static_cast<std::size_t>(i)] = i;
  const Permutation id(word);
  EXPECT_THROW(kl_poly(id, long_word(17), cache), DomainError);
  EXPECT_THROW(kl_poly(perm("01"), perm("012"), cache), DomainError);
  EXPECT_THROW(mu(perm("01"), perm("012"), cache), DomainError);
}

TEST(Kl, EntryBudget) {
  KlCache cache(KlOptions{DescentChoice::kLargest, 2, true});
  EXPECT_THROW(kl_poly(perm("0432187659"), perm("4678091235"), cache), ResourceError);
}

TEST(Kl, CacheStatsAndInterning) {
  KlCache cache;
  const IntPoly& a = cache.poly_ref(perm("0213"), perm("2301"));
  const IntPoly& b = cache.poly_ref(perm("0123"), perm("2301"));
  EXPECT_EQ(&a, &b);
  EXPECT_EQ(cache.intern(IntPoly{1, 1}), &a);
  const KlStats stats = cache.stats();
  EXPECT_GE(stats.hits, 1u);
  EXPECT_GE(stats.entries, 1u);
  EXPECT_GE(stats.distinct_polys, 1u);
}

TEST(Kl, DatabaseBacking) {
  Database db;
  {
    KlCache cache;
    cache.attach(&db);
    EXPECT_EQ(kl_poly(perm("216540873"), perm("567812340"), cache), (IntPoly{1, 8, 16, 11, 1}));
  }
  EXPECT_GT(db.size(), 0u);
  for (const auto& [key, poly] : db.records()) EXPECT_EQ(poly.coefficient(0), 1);
  KlCache warm;
  warm.attach(&db);
  EXPECT_EQ(kl_poly(perm("216540873"), perm("567812340"), warm), (IntPoly{1, 8, 16, 11, 1}));
  EXPECT_EQ(warm.stats().db_hits, 1u);
  EXPECT_EQ(warm.stats().misses, 1u);
}

TEST(Kl, ConcurrentCallersAgreeWithSerial) {
  const auto all = all_permutations(6);
  KlCache serial;
  std::vector<IntPoly> expected;
  for (const auto& w : all) expected.push_back(kl_poly(Permutation::identity(6), w, serial));
  KlCache shared;
  std::vector<std::vector<IntPoly>> got(4, std::vector<IntPoly>(all.size()));
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = 0; i < all.size(); ++i) {
        const std::size_t j = (i * 7 + static_cast<std::size_t>(t) * 131) % all.size();
        got[static_cast<std::size_t>(t)][j] = kl_poly(Permutation::identity(6), all[j], shared);
      }
    });
  }
  for (auto& th : workers) th.join();
  for (const auto& g : got) EXPECT_EQ(g, expected);
}

}  // namespace
}  // namespace klmu
