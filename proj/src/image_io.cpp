// Copyright (c) 2026, The RC Metrics Authors. All rights reserved.
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

#include "rc/image_io.hpp"

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include <fmt/format.h>
#include <jpeglib.h>
#include <png.h>

#include "rc/error.hpp"

namespace rc {
namespace fs = std::filesystem;

namespace {

std::string lower_ext(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct PngImage {
  png_image image{};
  PngImage() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
};

std::vector<std::uint8_t> read_png(const fs::path& path, png_uint_32 format, int& w, int& h) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
    throw Error(ErrorCode::kIoError, fmt::format("{}: {}", path.string(), png.image.message));
  }
  png.image.format = format;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, buf.data(), 0, nullptr)) {
    throw Error(ErrorCode::kIoError, fmt::format("{}: {}", path.string(), png.image.message));
  }
  w = static_cast<int>(png.image.width);
  h = static_cast<int>(png.image.height);
  return buf;
}

void write_png_raw(const fs::path& path, const std::uint8_t* data, int w, int h, png_uint_32 format) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(w);
  png.image.height = static_cast<png_uint_32>(h);
  png.image.format = format;
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, data, 0, nullptr)) {
    throw Error(ErrorCode::kIoError, fmt::format("{}: {}", path.string(), png.image.message));
  }
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

RgbImage read_jpeg(const fs::path& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!file) throw Error(ErrorCode::kIoError, fmt::format("cannot open {}", path.string()));
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  RgbImage img;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::kIoError, fmt::format("{}: {}", path.string(), err.message));
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  img = RgbImage(static_cast<int>(cinfo.output_width), static_cast<int>(cinfo.output_height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = img.px(0, static_cast<int>(cinfo.output_scanline));
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

}  // namespace

RgbImage read_image(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kIoError, fmt::format("{} does not exist", path.string()));
  const std::string ext = lower_ext(path);
  if (ext == ".jpg" || ext == ".jpeg") return read_jpeg(path);
  RgbImage img;
  img.data = read_png(path, PNG_FORMAT_RGB, img.width, img.height);
  return img;
}

void write_png(const RgbImage& image, const fs::path& path) {
  write_png_raw(path, image.data.data(), image.width, image.height, PNG_FORMAT_RGB);
}

BinaryMask read_mask(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kIoError, fmt::format("{} does not exist", path.string()));
  BinaryMask mask;
  std::vector<std::uint8_t> gray;
  const std::string ext = lower_ext(path);
  if (ext == ".jpg" || ext == ".jpeg") {
    const RgbImage rgb = read_jpeg(path);
    mask = BinaryMask(rgb.width, rgb.height);
    for (std::size_t i = 0; i < mask.data.size(); ++i) {
      const std::uint8_t* p = &rgb.data[i * 3];
      mask.data[i] = (p[0] * 299 + p[1] * 587 + p[2] * 114) / 1000 >= 128;
    }
    return mask;
  }
  gray = read_png(path, PNG_FORMAT_GRAY, mask.width, mask.height);
  mask.data.resize(gray.size());
  for (std::size_t i = 0; i < gray.size(); ++i) mask.data[i] = gray[i] >= 128 ? 1 : 0;
  return mask;
}

void write_mask(const BinaryMask& mask, const fs::path& path) {
  std::vector<std::uint8_t> gray(mask.data.size());
  for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = mask.data[i] ? 255 : 0;
  write_png_raw(path, gray.data(), mask.width, mask.height, PNG_FORMAT_GRAY);
}

std::vector<fs::path> list_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, fmt::format("{} is not a directory", dir.string()));
  }
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_ext(entry.path());
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return out;
}

std::string frame_name(std::size_t index) { return fmt::format("{:05d}.png", index); }

std::vector<RgbImage> read_frames(const fs::path& dir) {
  std::vector<RgbImage> out;
  for (const auto& p : list_frames(dir)) out.push_back(read_image(p));
  return out;
}

std::vector<BinaryMask> read_masks(const fs::path& dir) {
  std::vector<BinaryMask> out;
  for (const auto& p : list_frames(dir)) out.push_back(read_mask(p));
  return out;
}

void write_frames(const std::vector<RgbImage>& frames, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) write_png(frames[i], dir / frame_name(i));
}

void write_masks(const std::vector<BinaryMask>& masks, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < masks.size(); ++i) write_mask(masks[i], dir / frame_name(i));
}

}  // namespace rc
