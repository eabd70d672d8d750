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
#include <limits>
#include <vector>

#include "rc/image.hpp"

namespace rc {

// One 8-connected component of a mask.
struct TargetRegion {
  BinaryMask component_mask;  // same dims as the source, this component only
  BoundingBox tight_box;
  BoundingBox expanded_box;
  int component_id = 0;  // >= 1
  std::size_t area = 0;
};

struct CropPair {
  RgbImage image_crop;
  BinaryMask mask_crop;
  BoundingBox source_box;
};

// Components ordered by (y0, x0) of their tight box; ids follow that order.
std::vector<TargetRegion> connected_components(const BinaryMask& mask);

// Minimal box over all set pixels; nullopt-like empty box (0,0,0,0) when none.
BoundingBox tight_bounding_box(const BinaryMask& mask);

// Grows each side by floor(extent / 3) along its own axis, clamped to the image.
BoundingBox expand_box(const BoundingBox& box, int image_w, int image_h);

CropPair crop_pair(const RgbImage& image, const BinaryMask& mask, const BoundingBox& box);
RgbImage crop_image(const RgbImage& image, const BoundingBox& box);
BinaryMask crop_mask(const BinaryMask& mask, const BoundingBox& box);

// Area resampling: an output cell is set iff at least half of the source area
// mapped onto it is set. Exact integer arithmetic; works for up- and downscaling.
BinaryMask downsample_mask(const BinaryMask& mask, int target_w, int target_h);

// Cells overlapped by at least one set source pixel.
BinaryMask downsample_mask_touched(const BinaryMask& mask, int target_w, int target_h);

// Same rule as downsample_mask over a fractional source window [x0, x0 + w) x [y0, y0 + h).
BinaryMask resample_mask_window(const BinaryMask& mask, double x0, double y0, double w,
                                double h, int target_w, int target_h);

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b);

inline constexpr double kPsnrInfinity = std::numeric_limits<double>::infinity();

// PSNR with masks rendered as {0, 255}; kPsnrInfinity for identical masks.
double mask_psnr(const BinaryMask& a, const BinaryMask& b);

// max(m_diff - m_gt, 0): set where m_diff is set and m_gt is not.
BinaryMask artifact_mask(const BinaryMask& m_diff, const BinaryMask& m_gt);

std::size_t max_component_area(const BinaryMask& mask);

// 3x3 square structuring element; out-of-frame neighbours are ignored.
BinaryMask erode3x3(const BinaryMask& mask);
BinaryMask dilate3x3(const BinaryMask& mask);
BinaryMask open3x3(const BinaryMask& mask);

// Mean (x, y) of set pixel centres. Requires a non-empty mask.
struct Centroid {
  double x = 0.0;
  double y = 0.0;
};
Centroid mask_centroid(const BinaryMask& mask);

}  // namespace rc
