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

#include "arena/perturb/png_io.h"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "arena/common/error.h"

namespace arena::perturb {
namespace {

std::vector<uint8_t> ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteBytes(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kIoError, "short write to " + path.string());
}

png_uint_32 FormatFor(int channels) {
  switch (channels) {
    case 1: return PNG_FORMAT_GRAY;
    case 3: return PNG_FORMAT_RGB;
    default: return PNG_FORMAT_RGBA;
  }
}

int ChannelsFor(png_uint_32 format) {
  return static_cast<int>(PNG_IMAGE_PIXEL_CHANNELS(format));
}

Image Decode(const std::vector<uint8_t>& bytes, bool force_gray) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
    Fail(ErrorCode::kIoError, std::string("not a readable PNG: ") + png.message);
  }
  png_uint_32 format;
  if (force_gray) {
    format = PNG_FORMAT_GRAY;
  } else if (png.format & PNG_FORMAT_FLAG_ALPHA) {
    format = PNG_FORMAT_RGBA;
  } else if (png.format & PNG_FORMAT_FLAG_COLOR) {
    format = PNG_FORMAT_RGB;
  } else {
    format = PNG_FORMAT_GRAY;
  }
  png.format = format;
  Image image(static_cast<int>(png.width), static_cast<int>(png.height),
              ChannelsFor(format));
  if (!png_image_finish_read(&png, nullptr, image.data.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    Fail(ErrorCode::kIoError, "PNG decode failed: " + message);
  }
  return image;
}

}  // namespace

Image DecodePng(const std::vector<uint8_t>& bytes) { return Decode(bytes, false); }
Image ReadPng(const std::filesystem::path& path) { return DecodePng(ReadBytes(path)); }
Image DecodeMask(const std::vector<uint8_t>& bytes) { return Decode(bytes, true); }
Image ReadMask(const std::filesystem::path& path) { return DecodeMask(ReadBytes(path)); }

std::vector<uint8_t> EncodePng(const Image& image) {
  image.Validate();
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = FormatFor(image.channels);
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, image.data.data(), 0,
                                 nullptr)) {
    Fail(ErrorCode::kIoError, std::string("PNG encode failed: ") + png.message);
  }
  std::vector<uint8_t> bytes(size);
  if (!png_image_write_to_memory(&png, bytes.data(), &size, 0, image.data.data(),
                                 0, nullptr)) {
    Fail(ErrorCode::kIoError, std::string("PNG encode failed: ") + png.message);
  }
  bytes.resize(size);
  return bytes;
}

void WritePng(const std::filesystem::path& path, const Image& image) {
  WriteBytes(path, EncodePng(image));
}

}  // namespace arena::perturb
