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

#include "klmu/error.hpp"
#include "klmu/picture.hpp"
#include "test_support.hpp"

namespace klmu {
namespace {

using testing::pair;

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

TEST(Picture, CoverGolden) {
  EXPECT_EQ(render_picture(pair("01", "10"), PictureFormat::kAscii), "ox\nxo\n\n10\n00\n");
}

TEST(Picture, DiagonalGolden) {
  EXPECT_EQ(render_picture(pair("2031", "2031"), PictureFormat::kAscii),
            "..@.\n@...\n...@\n.@..\n\n0000\n0000\n0000\n0000\n");
}

TEST(Picture, SingleCapitolGolden) {
  const std::string expected =
      "o....x\n"
      "..x.o.\n"
      "..o.x.\n"
      "xo....\n"
      "...@..\n"
      ".x...o\n"
      "\n"
      "111110\n"
      "110010\n"
      "111110\n"
      "011110\n"
      "011110\n"
      "000000\n";
  const Pair p = pair("204135", "523140");
  EXPECT_EQ(render_picture(p, PictureFormat::kAscii), expected);
  const Picture pic = make_picture(p);
  EXPECT_EQ(pic.markers[4][3], Marker::kCapitol);
  EXPECT_EQ(pic.shade[3][3], 1);
}

TEST(Picture, NegativeCellsForIncomparablePairs) {
  EXPECT_EQ(render_picture(pair("120", "201"), PictureFormat::kAscii), "ox.\nx.o\n.ox\n\n100\n0-0\n000\n");
}

TEST(Picture, ShadeMatchesDiffAndMarkersArePermutationMatrices) {
  for (const auto& x : testing::all_permutations(4)) {
    for (const auto& w : testing::all_permutations(4)) {
      const Picture pic = make_picture(Pair(x, w));
      for (int r = 0; r < 4; ++r) {
        int disks = 0;
        int circles = 0;
        for (int c = 0; c < 4; ++c) {
          ASSERT_EQ(pic.shade[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], diff(x, w, c, 3 - r));
          const Marker m = pic.markers[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          disks += m == Marker::kDisk || m == Marker::kCapitol;
          circles += m == Marker::kCircle || m == Marker::kCapitol;
        }
        ASSERT_EQ(disks, 1);
        ASSERT_EQ(circles, 1);
      }
    }
  }
}

TEST(Picture, LargeShadeClamps) {
  std::vector<int> id(20);
  std::vector<int> rev(20);
  for (int i = 0; i < 20; ++i) {
    id[static_cast<std::size_t>(i)] = i;
    rev[static_cast<std::size_t>(i)] = 19 - i;
  }
  const std::string text = render_picture(Pair(Permutation(id), Permutation(rev)), PictureFormat::kAscii);
  EXPECT_NE(text.find('+'), std::string::npos);
  EXPECT_EQ(text.find('-'), std::string::npos);
}

TEST(Picture, ParseRoundTrip) {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& x : testing::all_permutations(n)) {
      for (const auto& w : testing::all_permutations(n)) {
        const Pair p(x, w);
        ASSERT_EQ(parse_picture(render_picture(p, PictureFormat::kAscii)), p);
      }
    }
  }
  EXPECT_EQ(parse_picture("ox\nxo\n"), pair("01", "10"));
}

TEST(Picture, ParseErrors) {
  EXPECT_THROW(parse_picture(""), ParseError);
  EXPECT_THROW(parse_picture("ox\nx\n"), ParseError);
  EXPECT_THROW(parse_picture("oq\nxo\n"), ParseError);
  EXPECT_THROW(parse_picture("xx\noo\n"), ParseError);
  EXPECT_THROW(parse_picture("@.\n.x\n"), ParseError);
  EXPECT_THROW(parse_picture_format("png"), ParseError);
  EXPECT_EQ(parse_picture_format("svg"), PictureFormat::kSvg);
}

TEST(Picture, Svg) {
  const Pair p = pair("204135", "523140");
  const std::string svg = render_picture(p, PictureFormat::kSvg);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find("data-x=\"204135\" data-w=\"523140\""), std::string::npos);
  EXPECT_EQ(count_of(svg, "<rect "), 36u);
  EXPECT_EQ(count_of(svg, "<circle "), 12u);
  EXPECT_EQ(count_of(svg, "data-d=\"1\""), 21u);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
  EXPECT_EQ(svg, render_picture(p, PictureFormat::kSvg));
  EXPECT_NE(render_picture(pair("120", "201"), PictureFormat::kSvg).find("fill=\"red\""), std::string::npos);
}

}  // namespace
}  // namespace klmu
