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

#include <gtest/gtest.h>

#include "rc/diagnostics.hpp"
#include "rc/error.hpp"
#include "rc/resample.hpp"
#include "synth.hpp"

namespace rc {
namespace {

TEST(SpectralDiff, IdenticalFramesGiveZero) {
  const std::vector<RgbImage> a{testing::random_texture(32, 24, 1), testing::random_texture(32, 24, 2)};
  const SpectrumMap d = spectral_diff(a, a);
  EXPECT_EQ(d.width, 32);
  EXPECT_EQ(d.height, 24);
  EXPECT_EQ(d.frames, 2);
  for (double v : d.values) EXPECT_EQ(v, 0.0);
}

TEST(SpectralDiff, AntisymmetricAndAveraging) {
  const std::vector<RgbImage> a{testing::random_texture(40, 30, 3)};
  const std::vector<RgbImage> b{testing::random_texture(40, 30, 4)};
  const SpectrumMap ab = spectral_diff(a, b);
  const SpectrumMap ba = spectral_diff(b, a);
  for (std::size_t i = 0; i < ab.values.size(); ++i) EXPECT_EQ(ab.values[i], -ba.values[i]);

  const std::vector<RgbImage> a3(3, a[0]), b3(3, b[0]);
  const SpectrumMap avg = spectral_diff(a3, b3, 3);
  for (std::size_t i = 0; i < ab.values.size(); ++i) EXPECT_NEAR(avg.values[i], ab.values[i], 1e-12);
}

TEST(SpectralDiff, BlurRemovesHighFrequencies) {
  const RgbImage sharp = testing::random_texture(64, 64, 5);
  const RgbImage blurred = to_rgb(gaussian_blur(to_planar(sharp), 1.5));
  const SpectrumMap d = spectral_diff({sharp}, {blurred});
  EXPECT_NEAR(d.at(32, 32), 0.0, 0.01);
  double high = 0.0;
  int n = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      if (std::abs(x - 32) > 16 || std::abs(y - 32) > 16) {
        high += d.at(y, x);
        ++n;
      }
    }
  }
  EXPECT_GT(high / n, 0.5);
}

TEST(SpectralDiff, Errors) {
  EXPECT_THROW(spectral_diff({}, {}), Error);
  try {
    spectral_diff({RgbImage(8, 8)}, {RgbImage(8, 9)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(FourierBasis, NormIsEpsilon) {
  const PlanarImage b = fourier_basis(20, 12, 3, -2, 4.0);
  double s = 0.0;
  for (float v : b.data) s += static_cast<double>(v) * v;
  EXPECT_NEAR(std::sqrt(s), 4.0, 1e-5);
}

TEST(FourierSensitivity, ZeroEpsilonAndGridLayout) {
  const ToyBackend toy(BackendOptions{.input_resize = 56, .patch_stride = 7});
  const std::vector<RgbImage> frames{testing::random_texture(24, 24, 6)};
  const SensitivityGrid zero = fourier_sensitivity(toy, frames, 5, 0.0);
  EXPECT_EQ(zero.values.size(), 25u);
  for (double v : zero.values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(fourier_sensitivity(toy, frames, 4, 1.0), Error);

  const SensitivityGrid g = fourier_sensitivity(toy, frames, 5, 4.0, 2);
  for (double v : g.values) EXPECT_GE(v, 0.0);
}

TEST(FourierSensitivity, DcShiftMatchesClosedForm) {
  const ToyBackend toy(BackendOptions{});
  const int w = 64, h = 48;
  const std::vector<RgbImage> frames{testing::random_texture(w, h, 7)};
  const double eps = 4.0;
  const SensitivityGrid g = fourier_sensitivity(toy, frames, 3, eps);
  // A constant shift c = eps / sqrt(3 h w) moves only the three mean channels.
  const double c = eps / std::sqrt(3.0 * w * h);
  const double expected = c * std::sqrt(3.0 * 32 * 32);
  EXPECT_NEAR(g.at(0, 0), expected, 1e-3 * expected);
  EXPECT_EQ(g.at(0, 0), g.values[4]);
}

TEST(FourierSensitivity, FullGridCentredAtFifteen) {
  const ToyBackend toy(BackendOptions{.input_resize = 28, .patch_stride = 14});
  const std::vector<RgbImage> frames{testing::random_texture(16, 16, 8)};
  const SensitivityGrid g = fourier_sensitivity(toy, frames);
  EXPECT_EQ(g.grid, 31);
  EXPECT_EQ(g.values.size(), 961u);
  EXPECT_EQ(g.at(0, 0), g.values[15 * 31 + 15]);
  EXPECT_EQ(g.epsilon, 4.0);
}

TEST(FourierSensitivity, SubAdditiveInEpsilon) {
  const ToyBackend toy(BackendOptions{.input_resize = 56, .patch_stride = 7});
  const std::vector<RgbImage> frames{testing::random_texture(28, 28, 9)};
  const SensitivityGrid one = fourier_sensitivity(toy, frames, 3, 0.5);
  const SensitivityGrid two = fourier_sensitivity(toy, frames, 3, 1.0);
  for (std::size_t i = 0; i < one.values.size(); ++i) EXPECT_LE(two.values[i], 2.0 * one.values[i] * (1 + 1e-3) + 1e-9);
}

TEST(MatrixCsv, SixSignificantDigits) {
  EXPECT_EQ(matrix_csv({1.0, 2.5, 1.0 / 3.0, -1234567.0}, 2, 2), "1,2.5\n0.333333,-1.23457e+06\n");
}

}  // namespace
}  // namespace rc
