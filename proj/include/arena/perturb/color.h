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

#ifndef ARENA_PERTURB_COLOR_H_
#define ARENA_PERTURB_COLOR_H_

#include <array>

#include "arena/common/image.h"

namespace arena::perturb {

// Swap intensities used for the standard color-shift variants.
inline constexpr std::array<double, 4> kColorSwapLevels{0.0, 0.33, 0.66, 1.0};

// Blends each selected pixel toward its BGR remap:
//   out = (1 - alpha) * [R, G, B] + alpha * [B, G, R]
// rounded half away from zero and clamped to [0, 255]. With a mask, only
// pixels whose mask value is >= kMaskThreshold change. `image` is RGB or
// RGBA (alpha is copied); `mask` is single-channel or null.
Image ColorSwap(const Image& image, const Image* mask, double alpha);

}  // namespace arena::perturb

#endif  // ARENA_PERTURB_COLOR_H_
