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

#include "arena/geometry/depth.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "arena/common/error.h"

namespace arena::geometry {
namespace {

void PutU32(std::ostream& out, uint32_t value) {
  const std::array<char, 4> bytes{static_cast<char>(value & 0xff),
                                  static_cast<char>((value >> 8) & 0xff),
                                  static_cast<char>((value >> 16) & 0xff),
                                  static_cast<char>((value >> 24) & 0xff)};
  out.write(bytes.data(), 4);
}

uint32_t GetU32(std::istream& in) {
  std::array<unsigned char, 4> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), 4);
  if (!in) Fail(ErrorCode::kParseError, "truncated depth map");
  return static_cast<uint32_t>(bytes[0]) | (static_cast<uint32_t>(bytes[1]) << 8) |
         (static_cast<uint32_t>(bytes[2]) << 16) |
         (static_cast<uint32_t>(bytes[3]) << 24);
}

}  // namespace

void WriteDepthMap(std::ostream& out, const DepthMap& depth) {
  Require(depth.values.size() == static_cast<size_t>(depth.width) * depth.height,
          "depth buffer size does not match dimensions");
  PutU32(out, static_cast<uint32_t>(depth.width));
  PutU32(out, static_cast<uint32_t>(depth.height));
  for (float v : depth.values) PutU32(out, std::bit_cast<uint32_t>(v));
  if (!out) Fail(ErrorCode::kIoError, "failed writing depth map");
}

DepthMap ReadDepthMap(std::istream& in) {
  const uint32_t width = GetU32(in);
  const uint32_t height = GetU32(in);
  if (width == 0 || height == 0 || width > (1u << 16) || height > (1u << 16)) {
    Fail(ErrorCode::kParseError, "implausible depth map dimensions");
  }
  DepthMap depth(static_cast<int>(width), static_cast<int>(height));
  for (float& v : depth.values) v = std::bit_cast<float>(GetU32(in));
  return depth;
}

void WriteDepthMapFile(const std::string& path, const DepthMap& depth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path);
  WriteDepthMap(out, depth);
}

DepthMap ReadDepthMapFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path);
  return ReadDepthMap(in);
}

double DepthScaleFactor(const DepthMap& relative, const DepthMap& reference,
                        const Image& region) {
  Require(relative.width == reference.width && relative.height == reference.height,
          "depth maps differ in size");
  Require(region.channels == 1 && region.width == relative.width &&
              region.height == relative.height,
          "region mask must be single-channel and match the depth maps");
  std::vector<double> ratios;
  for (int y = 0; y < relative.height; ++y) {
    for (int x = 0; x < relative.width; ++x) {
      if (region.at(x, y, 0) < kMaskThreshold) continue;
      if (!relative.valid(x, y) || !reference.valid(x, y)) continue;
      ratios.push_back(static_cast<double>(reference.at(x, y)) /
                       static_cast<double>(relative.at(x, y)));
    }
  }
  if (ratios.size() < kMinScaleOverlap) {
    Fail(ErrorCode::kInsufficientOverlap,
         "only " + std::to_string(ratios.size()) +
             " valid pixels in the scale region");
  }
  const size_t mid = ratios.size() / 2;
  std::nth_element(ratios.begin(), ratios.begin() + static_cast<long>(mid),
                   ratios.end());
  const double upper = ratios[mid];
  if (ratios.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(ratios.begin(), ratios.begin() + static_cast<long>(mid));
  return 0.5 * (lower + upper);
}

DepthMap ScaleDepth(const DepthMap& depth, double factor) {
  Require(std::isfinite(factor) && factor > 0.0, "scale factor must be positive");
  DepthMap out = depth;
  for (float& v : out.values) v = static_cast<float>(v * factor);
  return out;
}

}  // namespace arena::geometry
