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

#include "rc/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "rc/error.hpp"
#include "rc/resample.hpp"

namespace rc {
namespace {

// mt19937_64's raw output is fully specified by the standard, unlike the
// library distributions, so plans reproduce across toolchains.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_clip(const std::vector<RgbImage>& frames, const std::vector<BinaryMask>& masks,
                  const CorruptionPlan& plan) {
  if (frames.size() != masks.size() || static_cast<int>(frames.size()) != plan.video_len) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("clip has {} frames / {} masks, plan expects {}", frames.size(),
                            masks.size(), plan.video_len));
  }
}

}  // namespace

std::string_view corruption_kind_name(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::kDrop: return "drop";
    case CorruptionKind::kReplace: return "replace";
    case CorruptionKind::kMaskBlur: return "mask-blur";
  }
  return "unknown";
}

CorruptionKind parse_corruption_kind(std::string_view name) {
  if (name == "drop") return CorruptionKind::kDrop;
  if (name == "replace") return CorruptionKind::kReplace;
  if (name == "mask-blur" || name == "mask_blur") return CorruptionKind::kMaskBlur;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown corruption kind '{}'", name));
}

std::vector<int> CorruptionPlan::selection(int level) const {
  if (level < 0 || level > static_cast<int>(order.size())) {
    throw Error(ErrorCode::kLevelTooLarge, fmt::format("level {} not planned", level));
  }
  std::vector<int> out(order.begin(), order.begin() + level);
  std::sort(out.begin(), out.end());
  return out;
}

CorruptionPlan plan_corruption(CorruptionKind kind, std::uint64_t seed, int video_len,
                               const std::vector<int>& levels) {
  if (video_len < 1) throw Error(ErrorCode::kInvalidArgument, "video_len must be >= 1");
  if (levels.empty()) throw Error(ErrorCode::kInvalidArgument, "no corruption levels");
  if (!std::is_sorted(levels.begin(), levels.end()) || levels.front() < 0) {
    throw Error(ErrorCode::kInvalidArgument, "levels must be non-negative and increasing");
  }
  std::vector<int> eligible;
  const int first = kind == CorruptionKind::kDrop ? 1 : 0;
  const int last = kind == CorruptionKind::kDrop ? video_len - 2 : video_len - 1;
  for (int t = first; t <= last; ++t) eligible.push_back(t);
  const int max_level = levels.back();
  if (max_level >= video_len || max_level > static_cast<int>(eligible.size())) {
    throw Error(ErrorCode::kLevelTooLarge,
                fmt::format("level {} with {} eligible of {} frames", max_level, eligible.size(),
                            video_len));
  }

  // Partial Fisher-Yates: the first max_level entries are a uniform sample
  // without replacement, in draw order.
  std::mt19937_64 rng(seed);
  for (int i = 0; i < max_level; ++i) {
    const auto j = i + static_cast<int>(uniform_below(rng, eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
  }

  CorruptionPlan plan;
  plan.kind = kind;
  plan.seed = seed;
  plan.video_len = video_len;
  plan.levels = levels;
  plan.order.assign(eligible.begin(), eligible.begin() + max_level);
  for (int level : levels) plan.selected_indices.push_back(plan.selection(level));
  return plan;
}

Clip apply_drop(const std::vector<RgbImage>& frames, const std::vector<BinaryMask>& masks,
                const CorruptionPlan& plan, int level) {
  require_clip(frames, masks, plan);
  const std::vector<int> drop = plan.selection(level);
  Clip out;
  for (int t = 0; t < plan.video_len; ++t) {
    if (std::binary_search(drop.begin(), drop.end(), t)) continue;
    out.frames.push_back(frames[t]);
    out.masks.push_back(masks[t]);
  }
  return out;
}

int default_min_distance(int video_len) { return std::max(1, video_len / 4); }

std::vector<std::pair<int, int>> replace_donors(const CorruptionPlan& plan, int level,
                                                int min_distance) {
  if (min_distance < 1) throw Error(ErrorCode::kInvalidArgument, "min_distance must be >= 1");
  std::vector<std::pair<int, int>> out;
  for (int t : plan.selection(level)) {
    std::vector<int> candidates;
    for (int d = 0; d < plan.video_len; ++d) {
      if (std::abs(d - t) >= min_distance) candidates.push_back(d);
    }
    if (candidates.empty()) {
      throw Error(ErrorCode::kNoDonorAvailable,
                  fmt::format("frame {} has no donor at distance >= {}", t, min_distance));
    }
    std::mt19937_64 rng(splitmix64(plan.seed ^ splitmix64(static_cast<std::uint64_t>(t) + 1)));
    out.emplace_back(t, candidates[uniform_below(rng, candidates.size())]);
  }
  return out;
}

Clip apply_replace(const std::vector<RgbImage>& frames, const std::vector<BinaryMask>& masks,
                   const CorruptionPlan& plan, int level, int min_distance) {
  require_clip(frames, masks, plan);
  Clip out{frames, masks};
  // Donor content always comes from the uncorrupted input.
  for (const auto& [target, donor] : replace_donors(plan, level, min_distance)) {
    out.frames[target] = frames[donor];
    out.masks[target] = masks[donor];
  }
  return out;
}

RgbImage blur_in_mask(const RgbImage& frame, const BinaryMask& mask, double sigma) {
  if (frame.width != mask.width || frame.height != mask.height) {
    throw Error(ErrorCode::kShapeMismatch, "blur_in_mask: frame and mask dims differ");
  }
  const RgbImage blurred = to_rgb(gaussian_blur(to_planar(frame), sigma));
  RgbImage out = frame;
  for (std::size_t i = 0; i < mask.data.size(); ++i) {
    if (!mask.data[i]) continue;
    for (int c = 0; c < 3; ++c) out.data[i * 3 + c] = blurred.data[i * 3 + c];
  }
  return out;
}

std::vector<RgbImage> apply_mask_blur(const std::vector<RgbImage>& frames,
                                      const std::vector<BinaryMask>& masks,
                                      const CorruptionPlan& plan, int level, double sigma) {
  require_clip(frames, masks, plan);
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "mask blur sigma must be > 0");
  std::vector<RgbImage> out = frames;
  for (int t : plan.selection(level)) out[t] = blur_in_mask(frames[t], masks[t], sigma);
  return out;
}

std::vector<SweepPoint> blur_sweep_rcs(const RgbImage& image, const BinaryMask& mask,
                                       const FeatureBackend& backend, const RcConfig& cfg,
                                       const BlurSweep& sweep) {
  if (sweep.sigmas.empty() || sweep.sigmas.front() != 0.0 ||
      !std::is_sorted(sweep.sigmas.begin(), sweep.sigmas.end())) {
    throw Error(ErrorCode::kInvalidArgument, "blur sweep must start at 0 and increase");
  }
  std::vector<SweepPoint> curve;
  for (double sigma : sweep.sigmas) {
    const SpatialScore s =
        sigma == 0.0 ? rc_s(image, mask, backend, cfg) : rc_s(blur_in_mask(image, mask, sigma), mask, backend, cfg);
    curve.push_back({sigma, s.rc_s_raw, s.rc_s_normalized});
  }
  return curve;
}

nlohmann::json plan_json(const CorruptionPlan& plan) {
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t i = 0; i < plan.levels.size(); ++i) {
    levels.push_back({{"level", plan.levels[i]}, {"indices", plan.selected_indices[i]}});
  }
  return {{"kind", std::string(corruption_kind_name(plan.kind))},
          {"seed", plan.seed},
          {"video_len", plan.video_len},
          {"levels", std::move(levels)}};
}

}  // namespace rc
