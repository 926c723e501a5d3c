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

#include <map>
#include <random>

#include "klmu/error.hpp"
#include "absl/hash/hash.h"
#include "klmu/poly.hpp"

namespace klmu {
namespace {

TEST(Poly, ShiftAddExamples) {
  EXPECT_EQ(shift_add(IntPoly{1}, IntPoly{1}, 1, 1), (IntPoly{1, 1}));
  EXPECT_EQ(shift_add(IntPoly{1, 1}, IntPoly{1}, 0, -1), (IntPoly{0, 1}));
  EXPECT_EQ(shift_add(IntPoly(), IntPoly{1, 8}, 2, 1), (IntPoly{0, 0, 1, 8}));
  EXPECT_THROW(shift_add(IntPoly(), IntPoly{1}, -1, 1), DomainError);
}

TEST(Poly, CancellationTrims) {
  IntPoly p{1, 2, 3};
  p.add_shifted(IntPoly{2, 3}, 1, -1);
  EXPECT_EQ(p, IntPoly{1});
  EXPECT_EQ(p.degree(), 0);
  p.add_shifted(IntPoly{1}, 0, -1);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.degree(), IntPoly::kZeroDegree);
  EXPECT_EQ(IntPoly({0, 0, 0}), IntPoly());
}

TEST(Poly, CoefficientAccess) {
  const IntPoly p{1, 8, 16};
  EXPECT_EQ(coefficient(p, 2), 16);
  EXPECT_EQ(coefficient(IntPoly{1}, 5), 0);
  EXPECT_EQ(coefficient(p, -1), 0);
  EXPECT_EQ(degree(IntPoly()), IntPoly::kZeroDegree);
  EXPECT_EQ(p.max_coefficient(), 16);
}

TEST(Poly, TextForm) {
  EXPECT_EQ((IntPoly{1, 14, 60, 96, 43, 4}).to_string(), "1,14,60,96,43,4");
  EXPECT_EQ(IntPoly().to_string(), "0");
  EXPECT_EQ(IntPoly::parse("1,10,43,86,84,37,5"), (IntPoly{1, 10, 43, 86, 84, 37, 5}));
  EXPECT_EQ(IntPoly::parse("0"), IntPoly());
  EXPECT_EQ(IntPoly::parse("1,0,0"), IntPoly{1});
  EXPECT_THROW(IntPoly::parse("1,,2"), ParseError);
  EXPECT_THROW(IntPoly::parse("a"), ParseError);
  const IntPoly big = IntPoly::parse("123456789012345678901234567890,-7");
  EXPECT_EQ(IntPoly::parse(big.to_string()), big);
}

TEST(Poly, ArbitraryPrecision) {
  IntPoly p{1};
  BigInt expected = 1;
  for (int i = 0; i < 200; ++i) {
    p.add_shifted(p, 0, 1);
    expected *= 2;
  }
  EXPECT_EQ(p.coefficient(0), expected);
}

// Term-map oracle for sequences of shifted additions.
TEST(Poly, MatchesTermMapOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    IntPoly acc;
    std::map<int, long long> oracle;
    for (int step = 0; step < 8; ++step) {
      std::vector<BigInt> coeffs;
      const int len = static_cast<int>(rng() % 4);
      for (int i = 0; i < len; ++i) coeffs.emplace_back(static_cast<long long>(rng() % 7) - 3);
      const IntPoly src(coeffs);
      const int power = static_cast<int>(rng() % 4);
      const int sign = rng() % 2 ? 1 : -1;
      acc = shift_add(acc, src, power, sign);
      for (int i = 0; i < len; ++i) {
        oracle[i + power] += sign * static_cast<long long>(coeffs[static_cast<std::size_t>(i)]);
      }
    }
    int top = -1;
    for (const auto& [d, c] : oracle) {
      if (c != 0) top = std::max(top, d);
    }
    ASSERT_EQ(acc.degree(), top < 0 ? IntPoly::kZeroDegree : top);
    for (const auto& [d, c] : oracle) ASSERT_EQ(acc.coefficient(d), c);
    ASSERT_EQ(IntPoly(acc.coeffs()), acc);
  }
}

TEST(Poly, HashAgreesWithEquality) {
  const absl::Hash<IntPoly> h;
  EXPECT_EQ(h(IntPoly{1, 2}), h(IntPoly({1, 2, 0})));
  EXPECT_NE(h(IntPoly{1, 2}), h(IntPoly{1, -2}));
}

}  // namespace
}  // namespace klmu
