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

#include "rc/resample.hpp"

#include <algorithm>
#include <cmath>

#include "rc/error.hpp"
#include "rc/simd/kernels.hpp"

namespace rc {
namespace {

struct LerpTap {
  int i0;
  int i1;
  float t;
};

std::vector<LerpTap> lerp_taps(double origin, double extent, int out_n, int src_n) {
  std::vector<LerpTap> taps(out_n);
  const double step = extent / out_n;
  for (int o = 0; o < out_n; ++o) {
    double s = origin + (o + 0.5) * step - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_n - 1));
    const int i0 = static_cast<int>(std::floor(s));
    const int i1 = std::min(i0 + 1, src_n - 1);
    taps[o] = {i0, i1, static_cast<float>(s - i0)};
  }
  return taps;
}

}  // namespace

PlanarImage resample_window_bilinear(const PlanarImage& src, double x0, double y0, double w,
                                     double h, int out_w, int out_h) {
  if (src.empty() || out_w < 1 || out_h < 1 || w <= 0.0 || h <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "resample: empty source or target");
  }
  const auto xt = lerp_taps(x0, w, out_w, src.width);
  const auto yt = lerp_taps(y0, h, out_h, src.height);
  PlanarImage out(src.channels, out_w, out_h);
  std::vector<float> row_a(out_w), row_b(out_w);
  for (int c = 0; c < src.channels; ++c) {
    const float* plane = src.plane(c);
    float* dst = out.plane(c);
    for (int oy = 0; oy < out_h; ++oy) {
      const LerpTap ty = yt[oy];
      const float* ra = plane + static_cast<std::size_t>(ty.i0) * src.width;
      const float* rb = plane + static_cast<std::size_t>(ty.i1) * src.width;
      for (int ox = 0; ox < out_w; ++ox) {
        const LerpTap tx = xt[ox];
        row_a[ox] = ra[tx.i0] + tx.t * (ra[tx.i1] - ra[tx.i0]);
        row_b[ox] = rb[tx.i0] + tx.t * (rb[tx.i1] - rb[tx.i0]);
      }
      float* d = dst + static_cast<std::size_t>(oy) * out_w;
      for (int ox = 0; ox < out_w; ++ox) d[ox] = row_a[ox] + ty.t * (row_b[ox] - row_a[ox]);
    }
  }
  return out;
}

PlanarImage resize_bilinear(const PlanarImage& src, int out_w, int out_h) {
  return resample_window_bilinear(src, 0.0, 0.0, src.width, src.height, out_w, out_h);
}

std::vector<float> gaussian_taps(double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gaussian sigma must be > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    w[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
    total += w[k + radius];
  }
  std::vector<float> taps(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) taps[i] = static_cast<float>(w[i] / total);
  return taps;
}

PlanarImage gaussian_blur(const PlanarImage& src, double sigma) {
  const std::vector<float> taps = gaussian_taps(sigma);
  const int r = static_cast<int>(taps.size() / 2);
  const auto& k = simd::active_kernels();
  const int w = src.width;
  const int h = src.height;
  PlanarImage tmp(src.channels, w, h);
  PlanarImage out(src.channels, w, h);
  std::vector<float> padded(static_cast<std::size_t>(std::max(w, h)) + 2 * r);
  std::vector<float> line(std::max(w, h));
  for (int c = 0; c < src.channels; ++c) {
    const float* in = src.plane(c);
    float* mid = tmp.plane(c);
    float* dst = out.plane(c);
    for (int y = 0; y < h; ++y) {
      const float* row = in + static_cast<std::size_t>(y) * w;
      for (int i = 0; i < w + 2 * r; ++i) padded[i] = row[std::clamp(i - r, 0, w - 1)];
      k.convolve_row(padded.data(), mid + static_cast<std::size_t>(y) * w, w, taps.data(), r);
    }
    for (int x = 0; x < w; ++x) {
      for (int i = 0; i < h + 2 * r; ++i) {
        padded[i] = mid[static_cast<std::size_t>(std::clamp(i - r, 0, h - 1)) * w + x];
      }
      k.convolve_row(padded.data(), line.data(), h, taps.data(), r);
      for (int y = 0; y < h; ++y) dst[static_cast<std::size_t>(y) * w + x] = line[y];
    }
  }
  return out;
}

}  // namespace rc
