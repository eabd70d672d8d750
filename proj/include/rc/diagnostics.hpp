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

#include <string>
#include <vector>

#include "rc/features.hpp"
#include "rc/image.hpp"

namespace rc {

// Row-major real grid. For spectra, rows are frequency rows with the zero
// frequency shifted to (height / 2, width / 2).
struct SpectrumMap {
  int width = 0;
  int height = 0;
  int frames = 0;  // pairs averaged over
  std::vector<double> values;

  double at(int y, int x) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Centered log(1 + |DFT|) of the Rec.601 luma of one frame.
SpectrumMap log_magnitude_spectrum(const RgbImage& frame);

// Mean over pairs of S(a_i) - S(b_i). Throws EmptyInput, ShapeMismatch.
SpectrumMap spectral_diff(const std::vector<RgbImage>& frames_a, const std::vector<RgbImage>& frames_b,
                          int jobs = 1);

struct SensitivityGrid {
  int grid = 0;  // odd; frequency (u, v) lives at row v + grid / 2, column u + grid / 2
  double epsilon = 0.0;
  std::vector<double> values;

  double at(int v, int u) const {
    const int h = grid / 2;
    return values[static_cast<std::size_t>(v + h) * grid + (u + h)];
  }
};

// cos(2 pi (u x / W + v y / H)) replicated over the three channels, scaled so
// the whole 3 x H x W tensor has L2 norm epsilon. A zero basis (which cannot
// occur for the cosine) would stay zero.
PlanarImage fourier_basis(int width, int height, int u, int v, double epsilon);

// Mean over frames of ||f(I + delta_uv) - f(I)||_2 on the flattened features.
// Perturbations are added in 8-bit intensity units (0..255 planes) without clamping.
SensitivityGrid fourier_sensitivity(const FeatureBackend& backend, const std::vector<RgbImage>& frames,
                                    int grid = 31, double epsilon = 4.0, int jobs = 1);

// One CSV line per row, comma-separated, 6 significant digits.
std::string matrix_csv(const std::vector<double>& values, int rows, int cols);

}  // namespace rc
