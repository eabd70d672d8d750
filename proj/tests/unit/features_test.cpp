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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "rc/error.hpp"
#include "rc/features.hpp"
#include "synth.hpp"

namespace rc {
namespace {

namespace fs = std::filesystem;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rc::Error thrown";
  return ErrorCode::kInvalidArgument;
}

FeatureMap random_map(int c, int h, int w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> d(0.0f, 3.0f);
  FeatureMap fm(c, h, w);
  for (float& v : fm.values) v = d(rng);
  return fm;
}

TEST(ToyBackend, GridFollowsResizeAndStride) {
  const ToyBackend toy(BackendOptions{});
  const FeatureMap fm = toy.extract(to_planar(testing::random_texture(50, 37, 1)));
  EXPECT_EQ(fm.channels, ToyBackend::kChannels);
  EXPECT_EQ(fm.height, 32);
  EXPECT_EQ(fm.width, 32);

  BackendOptions small;
  small.input_resize = 56;
  small.patch_stride = 8;
  EXPECT_EQ(ToyBackend(small).extract(to_planar(RgbImage(9, 9))).width, 7);
}

TEST(ToyBackend, FlatImageHasMeansOnly) {
  RgbImage img(40, 30);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) {
      img.px(x, y)[0] = 10;
      img.px(x, y)[1] = 100;
      img.px(x, y)[2] = 200;
    }
  const FeatureMap fm = ToyBackend(BackendOptions{}).extract(to_planar(img));
  for (int y = 0; y < fm.height; ++y) {
    for (int x = 0; x < fm.width; ++x) {
      EXPECT_NEAR(fm.at(0, y, x), 10.0f, 1e-3);
      EXPECT_NEAR(fm.at(1, y, x), 100.0f, 1e-3);
      EXPECT_NEAR(fm.at(2, y, x), 200.0f, 1e-3);
      for (int c = 3; c < 10; ++c) EXPECT_NEAR(fm.at(c, y, x), 0.0f, 1e-2) << c;
    }
  }
}

TEST(ToyBackend, Deterministic) {
  const ToyBackend toy(BackendOptions{});
  const PlanarImage p = to_planar(testing::random_texture(64, 48, 3));
  EXPECT_EQ(toy.extract(p), toy.extract(p));
}

TEST(FeatureFile, RoundTripIsBitExact) {
  const FeatureMap fm = random_map(5, 3, 4, 7);
  const auto bytes = encode_feature_map(fm);
  EXPECT_EQ(bytes.size(), kFeatureHeaderBytes + 5u * 3 * 4 * 4);
  EXPECT_EQ(bytes[0], 'R');
  EXPECT_EQ(bytes[3], 'T');
  EXPECT_EQ(decode_feature_map(bytes), fm);

  const fs::path path = fs::temp_directory_path() / "rc_feature_roundtrip.rcft";
  write_feature_file(fm, path);
  EXPECT_EQ(read_feature_file(path), fm);
  fs::remove(path);
}

TEST(FeatureFile, RejectsMalformedInput) {
  auto bytes = encode_feature_map(random_map(2, 2, 2, 1));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_EQ(code_of([&] { decode_feature_map(bad_magic); }), ErrorCode::kFormatError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_EQ(code_of([&] { decode_feature_map(truncated); }), ErrorCode::kFormatError);
  auto bad_version = bytes;
  bad_version[4] = 2;
  EXPECT_EQ(code_of([&] { decode_feature_map(bad_version); }), ErrorCode::kFormatError);
  auto zero_dim = bytes;
  zero_dim[8] = 0;
  EXPECT_EQ(code_of([&] { decode_feature_map(zero_dim); }), ErrorCode::kFormatError);

  FeatureMap nan_map = random_map(1, 1, 2, 1);
  nan_map.values[1] = std::numeric_limits<float>::quiet_NaN();
  EXPECT_EQ(code_of([&] { validate(nan_map); }), ErrorCode::kFormatError);
}

TEST(FileBackend, LooksUpByCropKey) {
  const fs::path dir = fs::temp_directory_path() / "rc_file_backend_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  BackendOptions options;
  options.kind = BackendKind::kFile;
  options.feature_dir = dir;
  const auto backend = make_backend(options);
  const PlanarImage crop = to_planar(testing::random_texture(20, 10, 5));
  EXPECT_EQ(code_of([&] { backend->extract(crop); }), ErrorCode::kFeatureUnavailable);

  const FeatureMap fm = random_map(6, 4, 4, 2);
  const auto* fb = dynamic_cast<const FileBackend*>(backend.get());
  ASSERT_NE(fb, nullptr);
  EXPECT_EQ(fb->path_for(crop), dir / (feature_key(crop) + ".rcft"));
  write_feature_file(fm, fb->path_for(crop));
  EXPECT_EQ(backend->extract(crop), fm);
  EXPECT_EQ(feature_key(crop).size(), 16u);
  EXPECT_NE(feature_key(crop), feature_key(to_planar(testing::random_texture(20, 10, 6))));
  fs::remove_all(dir);
}

TEST(NeuralBackend, MissingModelIsAnError) {
  BackendOptions options;
  options.kind = BackendKind::kNeural;
  options.model_path = "/nonexistent/model.onnx";
  EXPECT_EQ(code_of([&] { make_backend(options); }), ErrorCode::kModelLoadError);
}

TEST(BackendKind, NamesRoundTrip) {
  for (BackendKind k : {BackendKind::kFile, BackendKind::kToy, BackendKind::kNeural}) {
    EXPECT_EQ(parse_backend_kind(backend_kind_name(k)), k);
  }
  EXPECT_THROW(parse_backend_kind("gpu"), Error);
}

}  // namespace
}  // namespace rc
