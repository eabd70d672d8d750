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

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rc/features.hpp"
#include "rc/image.hpp"
#include "rc/rc_core.hpp"

namespace rc {

enum class CorruptionKind { kDrop, kReplace, kMaskBlur };

std::string_view corruption_kind_name(CorruptionKind kind);
CorruptionKind parse_corruption_kind(std::string_view name);  // drop | replace | mask-blur

// Corrupted frame indices per level. Every level takes a prefix of one seeded
// permutation of the eligible indices, so level sets are nested.
struct CorruptionPlan {
  CorruptionKind kind = CorruptionKind::kDrop;
  std::uint64_t seed = 0;
  int video_len = 0;
  std::vector<int> levels;
  std::vector<std::vector<int>> selected_indices;  // sorted, one per level
  std::vector<int> order;                          // permutation prefix of length max(levels)

  // Sorted indices corrupted at `level` frames; level <= max(levels).
  std::vector<int> selection(int level) const;
};

// Drop never selects the first or last frame.
CorruptionPlan plan_corruption(CorruptionKind kind, std::uint64_t seed, int video_len,
                               const std::vector<int>& levels);

struct Clip {
  std::vector<RgbImage> frames;
  std::vector<BinaryMask> masks;
};

Clip apply_drop(const std::vector<RgbImage>& frames, const std::vector<BinaryMask>& masks,
                const CorruptionPlan& plan, int level);

int default_min_distance(int video_len);  // max(1, T / 4)

// (target, donor) per selected index; the donor depends only on (seed, target)
// so it is stable across levels.
std::vector<std::pair<int, int>> replace_donors(const CorruptionPlan& plan, int level, int min_distance);

Clip apply_replace(const std::vector<RgbImage>& frames, const std::vector<BinaryMask>& masks,
                   const CorruptionPlan& plan, int level, int min_distance);

// Whole-frame Gaussian blur composited back only where the mask is set.
RgbImage blur_in_mask(const RgbImage& frame, const BinaryMask& mask, double sigma);

std::vector<RgbImage> apply_mask_blur(const std::vector<RgbImage>& frames,
                                      const std::vector<BinaryMask>& masks,
                                      const CorruptionPlan& plan, int level, double sigma);

struct BlurSweep {
  std::vector<double> sigmas{0.0, 0.5, 1.0, 2.0, 3.0};  // sigmas[0] must be 0
};

struct SweepPoint {
  double sigma = 0.0;
  double rc_s_raw = 0.0;
  double rc_s_normalized = 0.0;
};

std::vector<SweepPoint> blur_sweep_rcs(const RgbImage& image, const BinaryMask& mask,
                                       const FeatureBackend& backend, const RcConfig& cfg,
                                       const BlurSweep& sweep);

nlohmann::json plan_json(const CorruptionPlan& plan);

}  // namespace rc
