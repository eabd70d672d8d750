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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rc {

// Interleaved 8-bit RGB frame.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // size = width * height * 3

  RgbImage() = default;
  RgbImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, fill) {}

  bool empty() const { return width <= 0 || height <= 0; }
  std::uint8_t* px(int x, int y) { return &data[(static_cast<std::size_t>(y) * width + x) * 3]; }
  const std::uint8_t* px(int x, int y) const {
    return &data[(static_cast<std::size_t>(y) * width + x) * 3];
  }
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Channel-major float image; the input type of every feature backend.
struct PlanarImage {
  int channels = 0;
  int width = 0;
  int height = 0;
  std::vector<float> data;  // size = channels * height * width

  PlanarImage() = default;
  PlanarImage(int c, int w, int h, float fill = 0.0f)
      : channels(c), width(w), height(h),
        data(static_cast<std::size_t>(c) * w * h, fill) {}

  bool empty() const { return width <= 0 || height <= 0 || channels <= 0; }
  float& at(int c, int x, int y) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float at(int c, int x, int y) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float* plane(int c) { return &data[static_cast<std::size_t>(c) * height * width]; }
  const float* plane(int c) const { return &data[static_cast<std::size_t>(c) * height * width]; }
};

// Pixel-resolution target mask. Elements are exactly 0 or 1.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  BinaryMask() = default;
  BinaryMask(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

  std::uint8_t operator()(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  void set(int x, int y, bool v = true) {
    data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  std::size_t count() const;
  bool any() const;
  bool same_dims(const BinaryMask& o) const { return width == o.width && height == o.height; }
  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

// Half-open pixel box: [x0, x1) x [y0, y1).
struct BoundingBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool contains(const BoundingBox& o) const {
    return x0 <= o.x0 && y0 <= o.y0 && o.x1 <= x1 && o.y1 <= y1;
  }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

PlanarImage to_planar(const RgbImage& img);
RgbImage to_rgb(const PlanarImage& img);  // rounds and saturates to [0, 255]

// Rec.601 luma in [0, 255].
std::vector<float> to_gray(const RgbImage& img);

}  // namespace rc
