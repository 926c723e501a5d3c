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

// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. All comparisons are exact.

#include <algorithm>
#include <chrono>
#include <memory>
#include <optional>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "klmu/census.hpp"
#include "klmu/classes.hpp"
#include "klmu/error.hpp"
#include "klmu/kl.hpp"
#include "klmu/moves.hpp"
#include "klmu/store.hpp"

namespace {

using namespace klmu;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  template <typename A, typename B>
  void expect_eq(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream s;
      s << what << ": got " << got << ", want " << want;
      expect(false, s.str());
    }
  }
};

Permutation P(const char* s) { return parse_permutation(s); }

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> word(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) word[static_cast<std::size_t>(i)] = i;
  std::vector<Permutation> out;
  do out.emplace_back(std::span<const int>(word)); while (std::next_permutation(word.begin(), word.end()));
  return out;
}

std::string run_cli(std::vector<std::string> args, int* code = nullptr) {
  args.insert(args.begin(), "klmu");
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cli::run(args, out, err);
  if (code) *code = rc;
  return out.str();
}

BigInt naive_mu(NaiveKl& naive, const Permutation& x, const Permutation& w) {
  const int gap = length(w) - length(x);
  if (gap <= 0 || gap % 2 == 0) return 0;
  return naive.poly(x, w).coefficient((gap - 1) / 2);
}

BigInt naive_mu_bracket(NaiveKl& naive, const Permutation& x, const Permutation& w) {
  if (bruhat_leq(x, w)) return naive_mu(naive, x, w);
  if (bruhat_leq(w, x)) return naive_mu(naive, w, x);
  return 0;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.notes.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!outcome.pass) ++failures;
  std::string notes;
  for (const auto& n : outcome.notes) notes += (notes.empty() ? "" : "; ") + n;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1fs", secs);
  std::cout << "criterion " << id << " " << (outcome.pass ? "PASS" : "FAIL") << "  " << title << "  [" << timing
            << "]" << (notes.empty() ? "" : "  " + notes) << std::endl;
}

// Shared between the census criteria.
KlCache census_cache;
IrreducibilityChecker checker;
std::vector<CensusReport> series;

const std::vector<CensusReport>& census_through_9() {
  if (series.empty()) {
    CensusOptions options;
    options.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    series = census_series(9, census_cache, options);
  }
  return series;
}

std::vector<Pair> seeds_cache;

const std::vector<Pair>& minimal_nine() {
  if (seeds_cache.empty()) seeds_cache = minimal_pairs(9, census_cache);
  return seeds_cache;
}

Outcome table_one_small() {
  Outcome o;
  const auto& s = census_through_9();
  const std::uint64_t extremal[] = {6, 122, 2220, 45184, 1107636};
  const std::uint64_t unc[] = {2, 10, 152, 3114, 84624};
  const std::uint64_t mu_pos[] = {2, 2, 30, 176, 2312};
  const int max_coeff[] = {1, 2, 4, 15, 73};
  const std::uint64_t distinct[] = {1, 4, 16, 97, 1118};
  for (int n = 4; n <= 8; ++n) {
    const CensusReport& r = s[static_cast<std::size_t>(n - 1)];
    const std::size_t i = static_cast<std::size_t>(n - 4);
    const std::string at = " n=" + std::to_string(n);
    o.expect_eq(r.extremal_pairs, extremal[i], "extremal" + at);
    o.expect_eq(r.uncompressible_extremal, unc[i], "uncompressible" + at);
    o.expect_eq(r.mu_positive_uncompressible, mu_pos[i], "mu-positive" + at);
    o.expect(r.irreducible.has_value(), "irreducible missing" + at);
    if (r.irreducible) o.expect_eq(*r.irreducible, 0u, "irreducible" + at);
    o.expect_eq(r.max_coefficient, max_coeff[i], "max coefficient" + at);
    o.expect_eq(r.distinct_nonconstant_polys, distinct[i], "distinct polynomials" + at);
  }
  return o;
}

Outcome table_one_nine() {
  Outcome o;
  const CensusReport& r = census_through_9()[8];
  o.expect(r.irreducible.has_value() && r.minimal.has_value(), "irreducibility pass missing");
  if (r.irreducible) o.expect_eq(*r.irreducible, 16u, "irreducible");
  if (r.minimal) o.expect_eq(*r.minimal, 12u, "minimal");
  o.expect_eq(r.max_coefficient, 460, "max coefficient");
  o.expect_eq(r.distinct_nonconstant_polys, 24361u, "distinct polynomials");
  o.expect_eq(r.extremal_pairs, 33487176u, "extremal");
  o.expect_eq(r.uncompressible_extremal, 2896168u, "uncompressible");
  return o;
}

Outcome published_polynomials() {
  Outcome o;
  int code = -1;
  o.expect_eq(run_cli({"poly", "216540873", "567812340"}, &code), "1,8,16,11,1\n", "poly 216540873 567812340");
  o.expect_eq(code, 0, "exit code");
  o.expect_eq(run_cli({"poly", "01", "10"}), "1\n", "poly 01 10");
  o.expect_eq(run_cli({"poly", "0432187659", "4678091235"}), "1,14,60,96,43,4\n", "poly 0432187659 4678091235");
  o.expect_eq(run_cli({"mu", "0432187659", "4678091235"}), "4\n", "mu 0432187659 4678091235");
  o.expect_eq(run_cli({"poly", "2106543987", "5678901234"}), "1,10,43,86,84,37,5\n",
              "poly 2106543987 5678901234");
  o.expect_eq(run_cli({"mu", "2106543987", "5678901234"}), "5\n", "mu 2106543987 5678901234");
  return o;
}

Outcome mu_value_sets() {
  Outcome o;
  for (int n = 2; n <= 9; ++n) {
    const auto values = mu_values(n, census_cache, checker);
    o.expect(values == std::vector<BigInt>{1}, "M(" + std::to_string(n) + ") is not {1}");
  }
  return o;
}

Outcome crosshatch() {
  Outcome o;
  o.expect_eq(crosshatch_census(10), 4708u, "crosshatch_census(10)");
  return o;
}

Outcome table_three() {
  Outcome o;
  const std::vector<Pair>& seeds = minimal_nine();
  o.expect_eq(seeds.size(), 12u, "minimal S9 pairs");
  ClassOptions k0;
  k0.k = 0;
  const ClassReport r0 = k_class_partition(seeds, 9, k0, census_cache);
  o.expect_eq(r0.class_count, 3u, "classes at k=0");
  o.expect(!r0.sink_reached, "sink reached at k=0");
  ClassOptions k1;
  k1.k = 1;
  const ClassReport r1 = k_class_partition(seeds, 9, k1, census_cache);
  o.expect_eq(r1.class_count, 0u, "non-sink classes at k=1");
  o.expect(r1.sink_reached && r1.classes.size() == 1 && r1.classes[0].sink &&
               r1.classes[0].seeds.size() == seeds.size(),
           "not every seed reaches the sink at k=1");

  const Pair fig(P("216540873"), P("567812340"));
  o.expect(std::find(seeds.begin(), seeds.end(), fig) != seeds.end(), "(216540873,567812340) is not a seed");
  const std::vector<Move> chain = reduction_certificate(fig, 1);
  const std::vector<Move> parsed = parse_move_log(write_move_log(chain));
  const Pair end = replay(fig, parsed);
  o.expect_eq(end.to_string(), std::string("(01,10)"), "certificate end point");
  Pair cur = orient(fig);
  int widest = cur.size();
  for (const Move& m : parsed) {
    cur = apply_move(cur, m);
    widest = std::max(widest, cur.size());
  }
  o.expect(widest == 10, "certificate does not pass through S10");
  std::cout << "  certificate: " << chain.size() << " moves, widest group S" << widest << std::endl;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  KlCache cache;
  NaiveKl naive5(5);
  std::size_t comparable = 0;
  for (const auto& w : all_permutations(5)) {
    for (const auto& x : all_permutations(5)) {
      if (!bruhat_leq(x, w)) continue;
      ++comparable;
      if (!(kl_poly(x, w, cache) == naive5.poly(x, w))) {
        o.expect(false, "S5 mismatch at " + Pair(x, w).to_string());
      }
    }
  }
  NaiveKl naive6(6);
  std::mt19937_64 rng(2026);
  const auto s6 = all_permutations(6);
  std::size_t sampled = 0;
  std::size_t sampled_comparable = 0;
  while (sampled < 10000) {
    Permutation x = s6[rng() % s6.size()];
    Permutation w = s6[rng() % s6.size()];
    if (bruhat_leq(w, x)) std::swap(x, w);
    ++sampled;
    sampled_comparable += bruhat_leq(x, w);
    if (!(kl_poly(x, w, cache) == naive6.poly(x, w))) {
      o.expect(false, "S6 mismatch at " + Pair(x, w).to_string());
    }
  }
  std::cout << "  oracle: " << comparable << " comparable S5 pairs, " << sampled << " random S6 pairs ("
            << sampled_comparable << " comparable)" << std::endl;
  return o;
}

Outcome properties() {
  Outcome o;
  // Degree bound, constant term and sign on every comparable pair of S6.
  {
    KlCache cache(KlOptions{DescentChoice::kLargest, 0, false});
    for (const auto& w : all_permutations(6)) {
      for (const auto& x : all_permutations(6)) {
        if (x == w || !bruhat_leq(x, w)) continue;
        const IntPoly p = kl_poly(x, w, cache);
        bool ok = p.coefficient(0) == 1 && p.degree() <= (length(w) - length(x) - 1) / 2;
        for (const BigInt& c : p.coeffs()) ok = ok && c >= 0;
        if (!ok) o.expect(false, "polynomial invariant at " + Pair(x, w).to_string());
      }
    }
  }
  // L-S invariance of mu[.,.], compression invariance of P, right-descent
  // invariance of P, all through the naive oracle.
  for (int n = 3; n <= 5; ++n) {
    NaiveKl naive(n);
    NaiveKl smaller(n - 1);
    const auto all = all_permutations(n);
    for (const auto& w : all) {
      for (const auto& x : all) {
        const Pair p(x, w);
        const BigInt m = naive_mu_bracket(naive, x, w);
        for (const auto& [move, image] : ls_moves(p)) {
          if (naive_mu_bracket(naive, image.x, image.w) != m) o.expect(false, "L-S invariance at " + p.to_string());
          const Permutation bx = move.kind == Move::Kind::kRight ? apply_R(image.x, move.index) : apply_L(image.x, move.index);
          const Permutation bw = move.kind == Move::Kind::kRight ? apply_R(image.w, move.index) : apply_L(image.w, move.index);
          if (!(Pair(bx, bw) == p)) o.expect(false, "L-S involution at " + p.to_string());
        }
        if (!bruhat_leq(x, w)) continue;
        const IntPoly pxw = naive.poly(x, w);
        {
          for (int i : naked_capitols(p)) {
            const Pair c = compress(p, i);
            if (!(smaller.poly(c.x, c.w) == pxw)) o.expect(false, "compression invariance at " + p.to_string());
            if (!(decompress(c, i, x[i]) == std::optional<Pair>(p))) {
              o.expect(false, "decompress/compress roundtrip at " + p.to_string());
            }
          }
        }
        for (int s = 1; s < n; ++s) {
          if (((right_descents(w) >> s) & 1) && !(naive.poly(x.swap_positions(s - 1, s), w) == pxw)) {
            o.expect(false, "right-descent invariance at " + p.to_string());
          }
        }
        for (int i = 0; i <= n; ++i) {
          for (int v = 0; v <= n; ++v) {
            const auto d = decompress(p, i, v);
            if (d && !(compress(*d, i) == p)) o.expect(false, "decompress roundtrip at " + p.to_string());
          }
        }
      }
    }
  }
  // Database save/load byte-exactness.
  {
    Database db;
    KlCache cache;
    cache.attach(&db);
    kl_poly(P("0432187659"), P("4678091235"), cache);
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / ("klmu_acceptance_a_" + std::to_string(::getpid()));
    const auto b = dir / ("klmu_acceptance_b_" + std::to_string(::getpid()));
    db.save(a);
    Database::load(a)->save(b);
    auto slurp = [](const std::filesystem::path& f) {
      std::ifstream in(f, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      return s.str();
    };
    o.expect(db.size() > 0 && slurp(a) == slurp(b), "database save/load is not byte-exact");
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
  // Thread-count independence.
  {
    std::vector<std::string> texts;
    for (int threads : {1, 4, 16}) {
      KlCache cache;
      CensusOptions options;
      options.threads = threads;
      std::string text;
      for (const auto& r : census_series(7, cache, options)) text += r.to_text();
      const auto& seeds = minimal_nine();
      ClassOptions co;
      co.k = 0;
      co.threads = threads;
      text += k_class_partition(seeds, 9, co, census_cache).to_text();
      texts.push_back(text);
    }
    o.expect(texts[0] == texts[1] && texts[1] == texts[2], "output depends on thread count");
  }
  return o;
}

void stretch_rows() {
  struct Row {
    const char* x;
    const char* w;
    const char* poly;
  };
  const Row rows[] = {
      {"108765432a9", "789a4560123", "1,14,82,247,420,420,235,60,3"},
      {"21076543a98", "792a4560813", "1,16,112,442,1038,1485,1309,698,200,18"},
      {"1065432a987", "689a1345702", "1,17,129,556,1416,2143,1919,993,269,24"},
      {"21076543a98", "6789a123450", "1,18,145,646,1654,2516,2283,1197,325,28"},
  };
  KlCache cache;
  for (const Row& r : rows) {
    const auto start = std::chrono::steady_clock::now();
    std::string got;
    try {
      got = kl_poly(P(r.x), P(r.w), cache).to_string();
    } catch (const std::exception& e) {
      got = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << "stretch " << (got == r.poly ? "match" : "differ") << "  S11 (" << r.x << "," << r.w << ") -> "
              << got << "  [" << timing << "]" << std::endl;
  }
}

}  // namespace

int main() {
  report(1, "census statistics, n = 4..8", table_one_small);
  report(2, "census statistics, n = 9", table_one_nine);
  report(3, "published polynomials", published_polynomials);
  report(4, "M(n) = {1} for 2 <= n <= 9", mu_value_sets);
  report(5, "crosshatch census n = 10", crosshatch);
  report(6, "equivalence classes of the S9 minimal pairs", table_three);
  report(7, "fast engine agrees with the naive oracle", oracle_equivalence);
  report(8, "property suites", properties);
  stretch_rows();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
