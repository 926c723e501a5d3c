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

#ifndef KLMU_PICTURE_HPP
#define KLMU_PICTURE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "klmu/perm.hpp"

namespace klmu {

enum class Marker : char { kEmpty = '.', kDisk = 'x', kCircle = 'o', kCapitol = '@' };

/// Bruhat picture of (x, w): disks at (i, x(i)), circles at (i, w(i)) and
/// the difference function as shading. Row r holds value n-1-r.
struct Picture {
  int n = 0;
  std::vector<std::vector<Marker>> markers;  // [row][column]
  std::vector<std::vector<int>> shade;       // [row][column]
};

Picture make_picture(const Pair& pair);

enum class PictureFormat { kAscii, kSvg };

/// ASCII: the marker rows, a blank line, then the shade rows with one
/// character per cell ('+' above 9, '-' below 0). SVG 1.1 carries exact
/// shade values in data-d attributes.
std::string render_picture(const Pair& pair, PictureFormat format);

/// Reads the marker rows of an ASCII picture back into the pair. Stops at
/// the first blank line. Throws ParseError.
Pair parse_picture(std::string_view ascii);

PictureFormat parse_picture_format(std::string_view name);

}  // namespace klmu

#endif  // KLMU_PICTURE_HPP
