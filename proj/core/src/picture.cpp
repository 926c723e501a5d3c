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

#include "klmu/picture.hpp"

#include <algorithm>
#include <cstdio>

#include "klmu/error.hpp"

namespace klmu {

Picture make_picture(const Pair& pair) {
  const int n = pair.size();
  const DiffGrid grid(pair.x, pair.w);
  Picture pic;
  pic.n = n;
  pic.markers.assign(static_cast<std::size_t>(n), std::vector<Marker>(static_cast<std::size_t>(n), Marker::kEmpty));
  pic.shade.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    auto& xcell = pic.markers[static_cast<std::size_t>(n - 1 - pair.x[i])][static_cast<std::size_t>(i)];
    xcell = Marker::kDisk;
    auto& wcell = pic.markers[static_cast<std::size_t>(n - 1 - pair.w[i])][static_cast<std::size_t>(i)];
    wcell = wcell == Marker::kDisk ? Marker::kCapitol : Marker::kCircle;
  }
  for (int r = 0; r < n; ++r) {
    for (int p = 0; p < n; ++p) {
      pic.shade[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)] = grid.at(p, n - 1 - r);
    }
  }
  return pic;
}

namespace {

std::string render_ascii(const Picture& pic) {
  std::string out;
  for (const auto& row : pic.markers) {
    for (Marker m : row) out.push_back(static_cast<char>(m));
    out.push_back('\n');
  }
  out.push_back('\n');
  for (const auto& row : pic.shade) {
    for (int d : row) {
      out.push_back(d < 0 ? '-' : d > 9 ? '+' : static_cast<char>('0' + d));
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_svg(const Pair& pair, const Picture& pic) {
  const int n = pic.n;
  int peak = 1;
  for (const auto& row : pic.shade) {
    for (int d : row) peak = std::max(peak, d);
  }
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return std::string(buf);
  };
  const std::string size = std::to_string(n);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " + size + " " + size +
         "\" width=\"" + std::to_string(24 * n) + "\" height=\"" + std::to_string(24 * n) + "\" data-x=\"" +
         pair.x.compact() + "\" data-w=\"" + pair.w.compact() + "\">\n";
  for (int r = 0; r < n; ++r) {
    for (int p = 0; p < n; ++p) {
      const int d = pic.shade[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)];
      std::string fill = d < 0 ? "red" : "gray";
      const double opacity = d == 0 ? 0.0 : d < 0 ? 0.6 : 0.15 + 0.6 * d / peak;
      out += "  <rect x=\"" + std::to_string(p) + "\" y=\"" + std::to_string(r) +
             "\" width=\"1\" height=\"1\" fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) +
             "\" stroke=\"black\" stroke-width=\"0.02\" data-d=\"" + std::to_string(d) + "\"/>\n";
    }
  }
  for (int i = 0; i < n; ++i) {
    const std::string cx = num(i + 0.5);
    out += "  <circle cx=\"" + cx + "\" cy=\"" + num(n - 1 - pair.x[i] + 0.5) +
           "\" r=\"0.25\" fill=\"black\"/>\n";
    out += "  <circle cx=\"" + cx + "\" cy=\"" + num(n - 1 - pair.w[i] + 0.5) +
           "\" r=\"0.38\" fill=\"none\" stroke=\"black\" stroke-width=\"0.06\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_picture(const Pair& pair, PictureFormat format) {
  const Picture pic = make_picture(pair);
  return format == PictureFormat::kAscii ? render_ascii(pic) : render_svg(pair, pic);
}

Pair parse_picture(std::string_view ascii) {
  std::vector<std::string_view> rows;
  while (!ascii.empty()) {
    const std::size_t eol = ascii.find('\n');
    std::string_view line = ascii.substr(0, eol);
    ascii = eol == std::string_view::npos ? std::string_view{} : ascii.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) break;
    rows.push_back(line);
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError("picture: no marker rows");
  std::vector<int> x(static_cast<std::size_t>(n), -1);
  std::vector<int> w(static_cast<std::size_t>(n), -1);
  for (int r = 0; r < n; ++r) {
    const std::string_view row = rows[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != n) throw ParseError("picture: row " + std::to_string(r) + " has the wrong width");
    for (int c = 0; c < n; ++c) {
      const char ch = row[static_cast<std::size_t>(c)];
      const bool disk = ch == 'x' || ch == '@';
      const bool circle = ch == 'o' || ch == '@';
      if (!disk && !circle && ch != '.') throw ParseError(std::string("picture: unknown glyph '") + ch + "'");
      auto place = [&](std::vector<int>& word, const char* what) {
        if (word[static_cast<std::size_t>(c)] >= 0) {
          throw ParseError(std::string("picture: two ") + what + " in column " + std::to_string(c));
        }
        word[static_cast<std::size_t>(c)] = n - 1 - r;
      };
      if (disk) place(x, "disks");
      if (circle) place(w, "circles");
    }
  }
  return Pair(Permutation(x), Permutation(w));
}

PictureFormat parse_picture_format(std::string_view name) {
  if (name == "ascii") return PictureFormat::kAscii;
  if (name == "svg") return PictureFormat::kSvg;
  throw ParseError("picture: unknown format '" + std::string(name) + "'");
}

}  // namespace klmu
