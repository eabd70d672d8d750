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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "rc/image.hpp"

namespace rc::testing {

// Stationary colour texture: a few random oriented sinusoids plus fine noise.
struct TextureParams {
  int waves = 4;
  double min_period = 3.0;
  double max_period = 9.0;
  double amplitude = 45.0;
  double noise = 12.0;
  double base_r = 128.0, base_g = 118.0, base_b = 108.0;
};

struct Wave {
  double kx, ky, phase;
  double r, g, b;
};

inline std::vector<Wave> make_waves(std::mt19937_64& rng, const TextureParams& p) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Wave> waves;
  for (int i = 0; i < p.waves; ++i) {
    const double angle = unit(rng) * std::numbers::pi;
    const double period = p.min_period + unit(rng) * (p.max_period - p.min_period);
    const double k = 2.0 * std::numbers::pi / period;
    waves.push_back({k * std::cos(angle), k * std::sin(angle), unit(rng) * 2.0 * std::numbers::pi,
                     0.5 + unit(rng), 0.5 + unit(rng), 0.5 + unit(rng)});
  }
  return waves;
}

inline std::uint8_t clamp8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

// Renders the texture; `shift` offsets the colour base (temporal drift).
inline RgbImage render_texture(int w, int h, const std::vector<Wave>& waves, const TextureParams& p,
                               std::mt19937_64& noise_rng, double shift = 0.0, double dx = 0.0) {
  std::normal_distribution<double> noise(0.0, p.noise);
  RgbImage img(w, h);
  const double scale = p.amplitude / std::sqrt(static_cast<double>(waves.size()));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double r = p.base_r + shift, g = p.base_g + shift * 0.6, b = p.base_b - shift * 0.4;
      for (const Wave& wv : waves) {
        const double s = std::sin(wv.kx * (x + dx) + wv.ky * y + wv.phase) * scale;
        r += wv.r * s;
        g += wv.g * s;
        b += wv.b * s;
      }
      std::uint8_t* px = img.px(x, y);
      px[0] = clamp8(r + noise(noise_rng));
      px[1] = clamp8(g + noise(noise_rng));
      px[2] = clamp8(b + noise(noise_rng));
    }
  }
  return img;
}

inline RgbImage random_texture(int w, int h, std::uint64_t seed, const TextureParams& p = {}) {
  std::mt19937_64 rng(seed);
  const auto waves = make_waves(rng, p);
  return render_texture(w, h, waves, p, rng);
}

inline BinaryMask square_mask(int w, int h, int x0, int y0, int side) {
  BinaryMask m(w, h);
  for (int y = y0; y < std::min(h, y0 + side); ++y) {
    for (int x = x0; x < std::min(w, x0 + side); ++x) m.set(x, y);
  }
  return m;
}

inline BinaryMask rect_mask(int w, int h, int x0, int y0, int rw, int rh) {
  BinaryMask m(w, h);
  for (int y = std::max(0, y0); y < std::min(h, y0 + rh); ++y) {
    for (int x = std::max(0, x0); x < std::min(w, x0 + rw); ++x) m.set(x, y);
  }
  return m;
}

// Copies `src` into `dst` where the mask is set.
inline void paste_masked(RgbImage& dst, const RgbImage& src, const BinaryMask& mask) {
  for (int y = 0; y < dst.height; ++y) {
    for (int x = 0; x < dst.width; ++x) {
      if (mask(x, y)) std::copy_n(src.px(x, y), 3, dst.px(x, y));
    }
  }
}

inline void fill_uniform_noise(RgbImage& img, const BinaryMask& mask, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 255);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!mask(x, y)) continue;
      std::uint8_t* px = img.px(x, y);
      for (int c = 0; c < 3; ++c) px[c] = static_cast<std::uint8_t>(d(rng));
    }
  }
}

}  // namespace rc::testing
