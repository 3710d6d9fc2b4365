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

#ifndef ARENA_PERTURB_PNG_IO_H_
#define ARENA_PERTURB_PNG_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "arena/common/image.h"

namespace arena::perturb {

// Decodes to 8 bits. Color inputs become RGB, or RGBA when the file carries
// alpha (tRNS included); grayscale inputs stay single-channel unless they
// carry alpha. Failures raise kIoError.
Image DecodePng(const std::vector<uint8_t>& bytes);
Image ReadPng(const std::filesystem::path& path);

// Forces a single-channel result, converting color input to luminance.
Image DecodeMask(const std::vector<uint8_t>& bytes);
Image ReadMask(const std::filesystem::path& path);

std::vector<uint8_t> EncodePng(const Image& image);
void WritePng(const std::filesystem::path& path, const Image& image);

}  // namespace arena::perturb

#endif  // ARENA_PERTURB_PNG_IO_H_
