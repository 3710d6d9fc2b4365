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

#ifndef ARENA_COMMON_IMAGE_H_
#define ARENA_COMMON_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "arena/common/error.h"

namespace arena {

// Row-major interleaved 8-bit image with 1 (mask), 3 (RGB) or 4 (RGBA)
// channels.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<uint8_t> data;

  Image() = default;
  Image(int w, int h, int c, uint8_t fill = 0)
      : width(w), height(h), channels(c),
        data(static_cast<size_t>(w) * h * c, fill) {}

  size_t offset(int x, int y) const {
    return (static_cast<size_t>(y) * width + x) * channels;
  }
  uint8_t& at(int x, int y, int c) { return data[offset(x, y) + c]; }
  uint8_t at(int x, int y, int c) const { return data[offset(x, y) + c]; }
  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }

  void Validate() const {
    Require(width > 0 && height > 0, "image dimensions must be positive");
    Require(channels == 1 || channels == 3 || channels == 4,
            "image must have 1, 3 or 4 channels");
    Require(data.size() == static_cast<size_t>(width) * height * channels,
            "pixel buffer size does not match dimensions");
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// Single-channel masks select a pixel when its value is at least this.
inline constexpr uint8_t kMaskThreshold = 128;

}  // namespace arena

#endif  // ARENA_COMMON_IMAGE_H_
