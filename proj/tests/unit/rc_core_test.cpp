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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rc/error.hpp"
#include "rc/rc_core.hpp"
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

FeatureSet set_of(std::initializer_list<std::initializer_list<double>> rows) {
  FeatureSet s(rows.begin()->size());
  for (const auto& r : rows) s.push_back(std::vector<double>(r));
  return s;
}

TEST(Mmd, SinglePointsClosedForm) {
  // 2 - 2 exp(-d^2 / (2 sigma^2)) for one point each side.
  const double d2 = 3.0 * 3.0 + 4.0 * 4.0;
  EXPECT_NEAR(mmd2(set_of({{0, 0}}), set_of({{3, 4}}), {10.0}), 2.0 - 2.0 * std::exp(-d2 / 200.0), 1e-15);
  EXPECT_EQ(mmd2(set_of({{1, 2}}), set_of({{1, 2}}), {10.0}), 0.0);
}

TEST(Mmd, MatchesNaiveOracle) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d(0.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    testing::Rows x(3 + i % 5, std::vector<double>(4)), y(2 + i % 7, std::vector<double>(4));
    for (auto& r : x)
      for (double& v : r) v = d(rng);
    for (auto& r : y)
      for (double& v : r) v = d(rng) + 2.0;
    FeatureSet fx(4), fy(4);
    for (const auto& r : x) fx.push_back(r);
    for (const auto& r : y) fy.push_back(r);
    EXPECT_NEAR(mmd2(fx, fy, {10.0}), testing::naive_mmd2(x, y, 10.0), 1e-12);
  }
}

TEST(Mmd, Errors) {
  EXPECT_EQ(code_of([] { mmd2(FeatureSet(2), set_of({{1, 2}}), {10.0}); }), ErrorCode::kEmptySet);
  EXPECT_EQ(code_of([] { mmd2(set_of({{1}}), set_of({{1, 2}}), {10.0}); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([] { mmd2(set_of({{1}}), set_of({{2}}), {0.0}); }), ErrorCode::kInvalidArgument);
}

TEST(WindowGrid, StrideAndFlushAnchoring) {
  const WindowGrid g = window_grid(32, 32, 8, 4);
  EXPECT_EQ(g.origins.size(), 49u);
  const WindowGrid f = window_grid(10, 10, 4, 4);
  ASSERT_EQ(f.origins.size(), 9u);
  EXPECT_EQ(f.origins[1], (WindowOrigin{0, 4}));
  EXPECT_EQ(f.origins[2], (WindowOrigin{0, 6}));
  EXPECT_EQ(f.origins.back(), (WindowOrigin{6, 6}));
  EXPECT_EQ(window_grid(5, 5, 5, 3).origins.size(), 1u);
  EXPECT_EQ(code_of([] { window_grid(5, 5, 6, 1); }), ErrorCode::kWindowTooLarge);
  EXPECT_EQ(code_of([] { window_grid(5, 5, 2, 0); }), ErrorCode::kInvalidArgument);
}

TEST(ResolveWindow, DefaultsOnThirtyTwoGrid) {
  const ResolvedWindow w = resolve_window(RcConfig{}, 32, 32);
  EXPECT_EQ(w.window, 8);
  EXPECT_EQ(w.stride, 4);
  RcConfig tiny;
  EXPECT_EQ(resolve_window(tiny, 3, 3).window, 1);
  EXPECT_EQ(resolve_window(tiny, 3, 3).stride, 1);
  tiny.window_fraction = 0.0;
  EXPECT_THROW(resolve_window(tiny, 32, 32), Error);
}

TEST(Normalization, InverseAndRange) {
  EXPECT_DOUBLE_EQ(normalize_rcs(0.0, 3.0), 1.0);
  for (double x : {0.1, 1.0, 7.0}) {
    EXPECT_GT(normalize_rcs(x, 3.0), 0.0);
    EXPECT_LT(normalize_rcs(x, 3.0), 1.0);
    EXPECT_NEAR(denormalize_rcs(normalize_rcs(x, 3.0), 3.0), x, 1e-12);
  }
}

TEST(AlignMask, FallsBackToTouchedCells) {
  BinaryMask tiny(64, 64);
  tiny.set(10, 10);
  const BinaryMask a = align_mask(tiny, 8, 8);
  EXPECT_EQ(a.count(), 1u);
  EXPECT_EQ(a(1, 1), 1);
}

TEST(RcsTarget, WindowsWithoutTargetAreSkipped) {
  FeatureMap fm(1, 4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) fm.at(0, y, x) = static_cast<float>(x == 0 && y == 0 ? 50 : 0);
  BinaryMask target(4, 4);
  target.set(0, 0);
  const TargetScore s = rcs_target(fm, target, window_grid(4, 4, 2, 2), {10.0});
  ASSERT_EQ(s.windows.size(), 1u);
  // One masked cell at 50, three background cells at 0.
  EXPECT_NEAR(s.mean, 2.0 - 2.0 * std::exp(-2500.0 / 200.0), 1e-12);
  EXPECT_EQ(s.windows[0].masked_cells, 1u);
  EXPECT_FALSE(s.windows[0].crop_background);
}

TEST(RcsTarget, FullCoverageIsDegenerate) {
  FeatureMap fm(1, 4, 4);
  EXPECT_EQ(code_of([&] { rcs_target(fm, BinaryMask(4, 4, 1), window_grid(4, 4, 2, 2), {10.0}); }),
            ErrorCode::kDegenerateCrop);
  EXPECT_EQ(code_of([&] { rcs_target(fm, BinaryMask(4, 4), window_grid(4, 4, 2, 2), {10.0}); }),
            ErrorCode::kEmptyMask);
}

TEST(RcsTarget, WindowInsideTargetUsesCropBackground) {
  FeatureMap fm(1, 4, 4);
  BinaryMask target(4, 4);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) target.set(x, y);
  const TargetScore s = rcs_target(fm, target, window_grid(4, 4, 2, 2), {10.0});
  ASSERT_EQ(s.windows.size(), 1u);
  EXPECT_TRUE(s.windows[0].crop_background);
}

TEST(RcS, UniformImageScoresZero) {
  RgbImage img(80, 60, 120);
  const auto backend = make_backend(BackendOptions{});
  const SpatialScore s = rc_s(img, testing::square_mask(80, 60, 30, 20, 16), *backend, RcConfig{});
  EXPECT_NEAR(s.rc_s_raw, 0.0, 1e-9);
  EXPECT_NEAR(s.rc_s_normalized, 1.0, 1e-9);
  EXPECT_EQ(s.per_target.size(), 1u);
  EXPECT_EQ(s.window_size, 8);
  EXPECT_EQ(s.stride, 4);
}

TEST(RcS, InputErrors) {
  const auto backend = make_backend(BackendOptions{});
  const RgbImage img(40, 30, 9);
  EXPECT_EQ(code_of([&] { rc_s(img, BinaryMask(40, 30), *backend, RcConfig{}); }), ErrorCode::kEmptyMask);
  EXPECT_EQ(code_of([&] { rc_s(img, BinaryMask(41, 30, 1), *backend, RcConfig{}); }), ErrorCode::kShapeMismatch);
  // The whole frame masked leaves no background in the crop.
  EXPECT_EQ(code_of([&] { rc_s(img, BinaryMask(40, 30, 1), *backend, RcConfig{}); }), ErrorCode::kDegenerateCrop);
}

TEST(RcS, TargetsAveragedAndParallelMatchesSerial) {
  const auto backend = make_backend(BackendOptions{});
  const RgbImage img = testing::random_texture(160, 120, 77);
  BinaryMask m = testing::square_mask(160, 120, 10, 10, 20);
  m = [&] {
    BinaryMask u = m;
    const BinaryMask b = testing::square_mask(160, 120, 100, 70, 25);
    for (std::size_t i = 0; i < u.data.size(); ++i) u.data[i] |= b.data[i];
    return u;
  }();
  RcConfig serial;
  RcConfig par = serial;
  par.jobs = 4;
  const SpatialScore a = rc_s(img, m, *backend, serial);
  const SpatialScore b = rc_s(img, m, *backend, par);
  ASSERT_EQ(a.per_target.size(), 2u);
  EXPECT_EQ(a.rc_s_raw, b.rc_s_raw);
  EXPECT_NEAR(a.rc_s_raw, (a.per_target[0].mean + a.per_target[1].mean) / 2.0, 1e-15);
  EXPECT_GT(a.rc_s_raw, 0.0);
}

TEST(RcT, IdenticalFramesScoreZero) {
  const auto backend = make_backend(BackendOptions{});
  const RgbImage f = testing::random_texture(96, 72, 8);
  const BinaryMask m = testing::square_mask(96, 72, 30, 20, 24);
  const std::vector<RgbImage> frames(5, f);
  const std::vector<BinaryMask> masks(5, m);
  const TemporalScore s = rc_t(frames, masks, *backend, RcConfig{});
  ASSERT_TRUE(s.rc_t.has_value());
  EXPECT_NEAR(*s.rc_t, 0.0, 1e-9);
  EXPECT_EQ(s.per_pair.size(), 4u);
  EXPECT_EQ(s.valid_pairs, 4u);
}

TEST(RcT, DisjointMasksHaveNoValidPair) {
  const auto backend = make_backend(BackendOptions{});
  const std::vector<RgbImage> frames{testing::random_texture(96, 72, 1), testing::random_texture(96, 72, 2)};
  const std::vector<BinaryMask> masks{testing::square_mask(96, 72, 2, 2, 10), testing::square_mask(96, 72, 70, 50, 10)};
  const TemporalScore s = rc_t(frames, masks, *backend, RcConfig{});
  EXPECT_FALSE(s.rc_t.has_value());
  EXPECT_EQ(s.valid_pairs, 0u);
  EXPECT_FALSE(s.per_pair[0].valid);
}

TEST(RcT, MeanOfPairMeans) {
  const auto backend = make_backend(BackendOptions{});
  std::vector<RgbImage> frames;
  std::vector<BinaryMask> masks;
  for (int t = 0; t < 4; ++t) {
    frames.push_back(testing::random_texture(96, 72, 10 + t));
    masks.push_back(testing::square_mask(96, 72, 30 + t, 20, 24));
  }
  const TemporalScore s = rc_t(frames, masks, *backend, RcConfig{});
  double sum = 0.0;
  for (const PairScore& p : s.per_pair) sum += p.mean;
  EXPECT_NEAR(*s.rc_t, sum / 3.0, 1e-12);
  EXPECT_GT(*s.rc_t, 0.0);
}

TEST(RcT, Errors) {
  const auto backend = make_backend(BackendOptions{});
  const std::vector<RgbImage> one{RgbImage(20, 20)};
  const std::vector<BinaryMask> one_mask{BinaryMask(20, 20, 1)};
  EXPECT_EQ(code_of([&] { rc_t(one, one_mask, *backend, RcConfig{}); }), ErrorCode::kTooFewFrames);
  const std::vector<RgbImage> two(2, RgbImage(20, 20));
  EXPECT_EQ(code_of([&] { rc_t(two, one_mask, *backend, RcConfig{}); }), ErrorCode::kShapeMismatch);
}

}  // namespace
}  // namespace rc
