// Copyright 2026 The Policy Arena Authors.
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

#ifndef ARENA_GEOMETRY_DEPTH_H_
#define ARENA_GEOMETRY_DEPTH_H_

#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "arena/common/image.h"

namespace arena::geometry {

// Per-pixel depth in meters. Non-positive or non-finite entries are invalid.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  DepthMap() = default;
  DepthMap(int w, int h, float fill = 0.0f)
      : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {}

  float& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
  float at(int x, int y) const {
    return values[static_cast<size_t>(y) * width + x];
  }
  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  bool valid(int x, int y) const {
    const float d = at(x, y);
    return std::isfinite(d) && d > 0.0f;
  }
};

// Binary layout: width and height as little-endian u32, then width*height
// little-endian float32 values in row-major order.
void WriteDepthMap(std::ostream& out, const DepthMap& depth);
DepthMap ReadDepthMap(std::istream& in);
void WriteDepthMapFile(const std::string& path, const DepthMap& depth);
DepthMap ReadDepthMapFile(const std::string& path);

inline constexpr size_t kMinScaleOverlap = 10;

// Median of reference/relative over pixels selected by `region` and valid in
// both maps. Throws kInsufficientOverlap below kMinScaleOverlap pixels.
double DepthScaleFactor(const DepthMap& relative, const DepthMap& reference,
                        const Image& region);

DepthMap ScaleDepth(const DepthMap& depth, double factor);

}  // namespace arena::geometry

#endif  // ARENA_GEOMETRY_DEPTH_H_
