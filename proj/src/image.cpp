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

#include <algorithm>
#include <cmath>

#include "rc/image.hpp"

namespace rc {

PlanarImage to_planar(const RgbImage& img) {
  PlanarImage out(3, img.width, img.height);
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (int c = 0; c < 3; ++c) {
    float* dst = out.plane(c);
    for (std::size_t i = 0; i < n; ++i) dst[i] = img.data[i * 3 + c];
  }
  return out;
}

RgbImage to_rgb(const PlanarImage& img) {
  RgbImage out(img.width, img.height);
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (int c = 0; c < 3; ++c) {
    const float* src = img.plane(std::min(c, img.channels - 1));
    for (std::size_t i = 0; i < n; ++i) {
      out.data[i * 3 + c] =
          static_cast<std::uint8_t>(std::clamp(std::lround(src[i]), 0L, 255L));
    }
  }
  return out;
}

std::vector<float> to_gray(const RgbImage& img) {
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  std::vector<float> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* p = &img.data[i * 3];
    out[i] = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
  }
  return out;
}

}  // namespace rc
