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

#include "arena/perturb/color.h"

#include <algorithm>
#include <cmath>

#include "arena/common/error.h"

namespace arena::perturb {
namespace {

uint8_t Quantize(double v) {
  return static_cast<uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

}  // namespace

Image ColorSwap(const Image& image, const Image* mask, double alpha) {
  image.Validate();
  Require(image.channels == 3 || image.channels == 4,
          "color swap needs an RGB or RGBA image");
  Require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
  if (mask != nullptr) {
    mask->Validate();
    Require(mask->channels == 1, "mask must be single-channel");
    Require(mask->width == image.width && mask->height == image.height,
            "mask dimensions do not match the image");
  }
  Image out = image;
  const double keep = 1.0 - alpha;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (mask != nullptr && mask->at(x, y, 0) < kMaskThreshold) continue;
      const double r = image.at(x, y, 0);
      const double b = image.at(x, y, 2);
      out.at(x, y, 0) = Quantize(keep * r + alpha * b);
      out.at(x, y, 2) = Quantize(keep * b + alpha * r);
    }
  }
  return out;
}

}  // namespace arena::perturb
