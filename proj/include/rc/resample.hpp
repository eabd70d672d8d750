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

#include <vector>

#include "rc/image.hpp"

namespace rc {

// Bilinear sampling of the source window [x0, x0 + w) x [y0, y0 + h) (edge
// coordinates) onto an out_w x out_h grid, pixel-centre aligned, edge-clamped.
// A window equal to the full image at the same size is an exact copy.
PlanarImage resample_window_bilinear(const PlanarImage& src, double x0, double y0, double w,
                                     double h, int out_w, int out_h);

PlanarImage resize_bilinear(const PlanarImage& src, int out_w, int out_h);

// Separable Gaussian with radius ceil(3 sigma) and edge replication.
PlanarImage gaussian_blur(const PlanarImage& src, double sigma);

// Normalised taps of length 2 * ceil(3 sigma) + 1.
std::vector<float> gaussian_taps(double sigma);

}  // namespace rc
