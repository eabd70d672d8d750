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

#include "rc/diagnostics.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

#include "rc/error.hpp"
#include "rc/parallel.hpp"

namespace rc {

namespace {

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

SpectrumMap log_magnitude_spectrum(const RgbImage& frame) {
  if (frame.empty()) throw Error(ErrorCode::kEmptyInput, "empty frame");
  const int w = frame.width;
  const int h = frame.height;
  const std::vector<float> gray = to_gray(frame);
  const std::size_t n = static_cast<std::size_t>(w) * h;

  fftw_complex* buf = fftw_alloc_complex(n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(h, w, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = gray[i];
    buf[i][1] = 0.0;
  }
  fftw_execute(plan);

  SpectrumMap out;
  out.width = w;
  out.height = h;
  out.frames = 1;
  out.values.resize(n);
  for (int y = 0; y < h; ++y) {
    const int sy = (y + h / 2) % h;
    for (int x = 0; x < w; ++x) {
      const int sx = (x + w / 2) % w;
      const std::size_t src = static_cast<std::size_t>(y) * w + x;
      out.values[static_cast<std::size_t>(sy) * w + sx] = std::log1p(std::hypot(buf[src][0], buf[src][1]));
    }
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

SpectrumMap spectral_diff(const std::vector<RgbImage>& frames_a, const std::vector<RgbImage>& frames_b, int jobs) {
  if (frames_a.empty() || frames_b.empty()) throw Error(ErrorCode::kEmptyInput, "no frames to compare");
  if (frames_a.size() != frames_b.size()) {
    throw Error(ErrorCode::kShapeMismatch, fmt::format("{} frames vs {}", frames_a.size(), frames_b.size()));
  }
  const int w = frames_a.front().width;
  const int h = frames_a.front().height;
  for (std::size_t i = 0; i < frames_a.size(); ++i) {
    for (const RgbImage* f : {&frames_a[i], &frames_b[i]}) {
      if (f->width != w || f->height != h) {
        throw Error(ErrorCode::kShapeMismatch,
                    fmt::format("frame {} is {}x{}, expected {}x{}", i, f->width, f->height, w, h));
      }
    }
  }

  std::vector<std::vector<double>> diffs(frames_a.size());
  parallel_for(frames_a.size(), jobs, [&](std::size_t i) {
    const SpectrumMap sa = log_magnitude_spectrum(frames_a[i]);
    const SpectrumMap sb = log_magnitude_spectrum(frames_b[i]);
    diffs[i].resize(sa.values.size());
    for (std::size_t k = 0; k < sa.values.size(); ++k) diffs[i][k] = sa.values[k] - sb.values[k];
  });

  SpectrumMap out;
  out.width = w;
  out.height = h;
  out.frames = static_cast<int>(frames_a.size());
  out.values.assign(static_cast<std::size_t>(w) * h, 0.0);
  for (const auto& d : diffs) {
    for (std::size_t k = 0; k < d.size(); ++k) out.values[k] += d[k];
  }
  for (double& v : out.values) v /= static_cast<double>(frames_a.size());
  return out;
}

PlanarImage fourier_basis(int width, int height, int u, int v, double epsilon) {
  if (width < 1 || height < 1) throw Error(ErrorCode::kEmptyInput, "empty basis");
  std::vector<double> plane(static_cast<std::size_t>(width) * height);
  double norm2 = 0.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double phase = 2.0 * std::numbers::pi *
                           (static_cast<double>(u) * x / width + static_cast<double>(v) * y / height);
      const double c = std::cos(phase);
      plane[static_cast<std::size_t>(y) * width + x] = c;
      norm2 += c * c;
    }
  }
  norm2 *= 3.0;
  const double scale = norm2 > 0.0 ? epsilon / std::sqrt(norm2) : 0.0;
  PlanarImage out(3, width, height);
  for (int c = 0; c < 3; ++c) {
    float* dst = out.plane(c);
    for (std::size_t i = 0; i < plane.size(); ++i) dst[i] = static_cast<float>(plane[i] * scale);
  }
  return out;
}

SensitivityGrid fourier_sensitivity(const FeatureBackend& backend, const std::vector<RgbImage>& frames, int grid,
                                    double epsilon, int jobs) {
  if (frames.empty()) throw Error(ErrorCode::kEmptyInput, "no frames");
  if (grid < 1 || grid % 2 == 0) throw Error(ErrorCode::kInvalidArgument, fmt::format("grid {} must be odd", grid));
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be finite and >= 0");
  }
  const int half = grid / 2;
  const std::size_t points = static_cast<std::size_t>(grid) * grid;

  std::vector<PlanarImage> clean(frames.size());
  std::vector<FeatureMap> base(frames.size());
  parallel_for(frames.size(), jobs, [&](std::size_t i) {
    clean[i] = to_planar(frames[i]);
    base[i] = backend.extract(clean[i]);
  });

  SensitivityGrid out;
  out.grid = grid;
  out.epsilon = epsilon;
  out.values.assign(points, 0.0);
  parallel_for(points, jobs, [&](std::size_t p) {
    const int v = static_cast<int>(p) / grid - half;
    const int u = static_cast<int>(p) % grid - half;
    double total = 0.0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const PlanarImage& img = clean[i];
      PlanarImage perturbed = fourier_basis(img.width, img.height, u, v, epsilon);
      for (std::size_t k = 0; k < perturbed.data.size(); ++k) perturbed.data[k] += img.data[k];
      const FeatureMap shifted = backend.extract(perturbed);
      if (shifted.values.size() != base[i].values.size()) {
        throw Error(ErrorCode::kShapeMismatch, "backend output dims changed under perturbation");
      }
      double sq = 0.0;
      for (std::size_t k = 0; k < shifted.values.size(); ++k) {
        const double d = static_cast<double>(shifted.values[k]) - base[i].values[k];
        sq += d * d;
      }
      total += std::sqrt(sq);
    }
    out.values[p] = total / static_cast<double>(frames.size());
  });
  return out;
}

std::string matrix_csv(const std::vector<double>& values, int rows, int cols) {
  std::string out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c) out += ',';
      out += fmt::format("{:.6g}", values[static_cast<std::size_t>(r) * cols + c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace rc
