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
#include <set>

#include <gtest/gtest.h>

#include "rc/corruption.hpp"
#include "rc/error.hpp"
#include "synth.hpp"

namespace rc {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rc::Error thrown";
  return ErrorCode::kInvalidArgument;
}

Clip numbered_clip(int n) {
  Clip c;
  for (int t = 0; t < n; ++t) {
    c.frames.emplace_back(6, 4, static_cast<std::uint8_t>(t));
    c.masks.push_back(testing::square_mask(6, 4, 1, 1, 2));
  }
  return c;
}

TEST(Plan, LevelZeroIsEmptyAndLevelsNest) {
  const CorruptionPlan p = plan_corruption(CorruptionKind::kReplace, 3, 81, {0, 2, 4, 8, 16});
  EXPECT_TRUE(p.selection(0).empty());
  for (std::size_t i = 0; i + 1 < p.levels.size(); ++i) {
    const auto lo = p.selection(p.levels[i]);
    const auto hi = p.selection(p.levels[i + 1]);
    EXPECT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
  }
  EXPECT_EQ(p.selected_indices.back().size(), 16u);
}

TEST(Plan, DropNeverTouchesEndpoints) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CorruptionPlan p = plan_corruption(CorruptionKind::kDrop, seed, 10, {8});
    for (int t : p.selection(8)) {
      EXPECT_GT(t, 0);
      EXPECT_LT(t, 9);
    }
  }
  EXPECT_EQ(code_of([] { plan_corruption(CorruptionKind::kDrop, 1, 10, {9}); }), ErrorCode::kLevelTooLarge);
  EXPECT_EQ(code_of([] { plan_corruption(CorruptionKind::kReplace, 1, 10, {10}); }), ErrorCode::kLevelTooLarge);
  EXPECT_EQ(code_of([] { plan_corruption(CorruptionKind::kReplace, 1, 10, {4, 2}); }), ErrorCode::kInvalidArgument);
}

TEST(Plan, SeedsDiffer) {
  const auto a = plan_corruption(CorruptionKind::kReplace, 1, 81, {16}).selection(16);
  const auto b = plan_corruption(CorruptionKind::kReplace, 2, 81, {16}).selection(16);
  EXPECT_NE(a, b);
}

TEST(Drop, RemovesSelectedFramesInOrder) {
  const Clip c = numbered_clip(12);
  const CorruptionPlan p = plan_corruption(CorruptionKind::kDrop, 5, 12, {3});
  const Clip out = apply_drop(c.frames, c.masks, p, 3);
  ASSERT_EQ(out.frames.size(), 9u);
  const auto dropped = p.selection(3);
  int prev = -1;
  for (const RgbImage& f : out.frames) {
    const int t = f.data[0];
    EXPECT_GT(t, prev);
    EXPECT_FALSE(std::binary_search(dropped.begin(), dropped.end(), t));
    prev = t;
  }
}

TEST(Replace, DonorsRespectDistanceAndAreStableAcrossLevels) {
  const Clip c = numbered_clip(40);
  const CorruptionPlan p = plan_corruption(CorruptionKind::kReplace, 11, 40, {2, 4, 8});
  const int dist = default_min_distance(40);
  EXPECT_EQ(dist, 10);
  const auto d8 = replace_donors(p, 8, dist);
  const auto d2 = replace_donors(p, 2, dist);
  for (const auto& [t, d] : d8) EXPECT_GE(std::abs(t - d), dist);
  for (const auto& pair : d2) EXPECT_NE(std::find(d8.begin(), d8.end(), pair), d8.end());

  const Clip out = apply_replace(c.frames, c.masks, p, 8, dist);
  ASSERT_EQ(out.frames.size(), 40u);
  for (const auto& [t, d] : d8) EXPECT_EQ(out.frames[t].data[0], d);
}

TEST(Replace, NoDonorWhenClipTooShort) {
  const CorruptionPlan p = plan_corruption(CorruptionKind::kReplace, 1, 4, {1});
  EXPECT_EQ(code_of([&] { replace_donors(p, 1, 4); }), ErrorCode::kNoDonorAvailable);
  EXPECT_EQ(default_min_distance(3), 1);
}

TEST(MaskBlur, ChangesOnlyMaskedPixels) {
  const RgbImage img = testing::random_texture(40, 30, 2);
  const BinaryMask m = testing::square_mask(40, 30, 10, 8, 12);
  const RgbImage out = blur_in_mask(img, m, 2.0);
  std::size_t changed_inside = 0;
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 40; ++x) {
      const bool same = std::equal(img.px(x, y), img.px(x, y) + 3, out.px(x, y));
      if (!m(x, y)) EXPECT_TRUE(same);
      if (m(x, y) && !same) ++changed_inside;
    }
  }
  EXPECT_GT(changed_inside, 100u);

  const Clip c{{img, img}, {m, m}};
  const CorruptionPlan p = plan_corruption(CorruptionKind::kMaskBlur, 1, 2, {1});
  EXPECT_EQ(code_of([&] { apply_mask_blur(c.frames, c.masks, p, 1, 0.0); }), ErrorCode::kInvalidArgument);
}

TEST(BlurSweep, FirstPointIsPlainScore) {
  const auto backend = make_backend(BackendOptions{});
  const RgbImage img = testing::random_texture(96, 72, 3);
  const BinaryMask m = testing::square_mask(96, 72, 30, 20, 28);
  const auto curve = blur_sweep_rcs(img, m, *backend, RcConfig{}, BlurSweep{});
  ASSERT_EQ(curve.size(), 5u);
  EXPECT_EQ(curve[0].rc_s_raw, rc_s(img, m, *backend, RcConfig{}).rc_s_raw);
  EXPECT_LT(curve.back().rc_s_normalized, curve.front().rc_s_normalized);
  EXPECT_THROW(blur_sweep_rcs(img, m, *backend, RcConfig{}, BlurSweep{{1.0, 2.0}}), Error);
}

TEST(PlanJson, RecordsLevels) {
  const auto j = plan_json(plan_corruption(CorruptionKind::kDrop, 9, 20, {2, 4}));
  EXPECT_EQ(j["kind"], "drop");
  EXPECT_EQ(j["levels"].size(), 2u);
  EXPECT_EQ(j["levels"][1]["indices"].size(), 4u);
  EXPECT_EQ(parse_corruption_kind("mask-blur"), CorruptionKind::kMaskBlur);
}

}  // namespace
}  // namespace rc
