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
#include <optional>
#include <span>
#include <vector>

#include "rc/features.hpp"
#include "rc/image.hpp"

namespace rc {

struct KernelParams {
  double sigma = 10.0;  // Gaussian RBF bandwidth on raw feature distances
};

// Row-major set of equal-length real vectors.
class FeatureSet {
 public:
  FeatureSet() = default;
  explicit FeatureSet(std::size_t dim) : dim_(dim) {}
  FeatureSet(std::size_t dim, std::vector<double> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
  bool empty() const { return values_.empty(); }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  const std::vector<double>& values() const { return values_; }

  void push_back(std::span<const double> v);
  void reserve(std::size_t rows) { values_.reserve(rows * dim_); }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

// K(x, y) = exp(-|x - y|^2 / (2 sigma^2)).
double rbf_kernel(std::span<const double> x, std::span<const double> y, const KernelParams& k);

// Biased (V-statistic) squared MMD, clamped at 0.
double mmd2(const FeatureSet& x, const FeatureSet& y, const KernelParams& k);

struct WindowOrigin {
  int y = 0;
  int x = 0;
  friend bool operator==(const WindowOrigin&, const WindowOrigin&) = default;
};

// Window origins in raster order; the last row/column is anchored flush to
// the grid edge so every cell is covered when stride <= window.
struct WindowGrid {
  int grid_h = 0;
  int grid_w = 0;
  int window_h = 0;
  int window_w = 0;
  int stride = 0;
  std::vector<WindowOrigin> origins;
};

WindowGrid window_grid(int h, int w, int window_size, int stride);
WindowGrid window_grid(int h, int w, int window_h, int window_w, int stride);

struct RcConfig {
  double window_fraction = 0.25;   // window = floor(min(H', W') * fraction)
  double stride_fraction = 0.125;  // stride = floor(min(H', W') * fraction)
  KernelParams kernel;
  double tau = 3.0;
  bool l2_normalize = false;  // normalise feature vectors before MMD
  int jobs = 1;
};

struct ResolvedWindow {
  int window = 0;
  int stride = 0;
};
ResolvedWindow resolve_window(const RcConfig& cfg, int h, int w);

struct WindowScore {
  WindowOrigin origin;
  double discrepancy = 0.0;
  std::size_t masked_cells = 0;
  bool crop_background = false;  // window had no background; whole crop used
};

struct TargetScore {
  int component_id = 0;
  BoundingBox crop_box;
  std::vector<WindowScore> windows;
  double mean = 0.0;
};

struct SpatialScore {
  std::vector<TargetScore> per_target;
  double rc_s_raw = 0.0;
  double rc_s_normalized = 1.0;
  int window_size = 0;
  int stride = 0;
};

struct PairScore {
  int t = 0;  // pair (t, t + 1)
  bool valid = false;
  BoundingBox crop_box;
  std::vector<WindowScore> windows;
  double mean = 0.0;
};

struct TemporalScore {
  std::vector<PairScore> per_pair;
  std::optional<double> rc_t;  // empty when no pair had a shared region
  std::size_t valid_pairs = 0;
  int window_size = 0;
  int stride = 0;
};

double normalize_rcs(double raw, double tau);
double denormalize_rcs(double normalized, double tau);

// Row i = feature vector at cell i (raster order), optionally L2-normalised.
FeatureSet cell_vectors(const FeatureMap& fm, bool l2_normalize = false);

// Mask aligned to the feature grid; when the area rule leaves nothing set,
// every cell touched by the mask is used instead.
BinaryMask align_mask(const BinaryMask& mask_crop, int grid_w, int grid_h);

// Window-wise spatial discrepancy of one target. `ignore` marks cells that
// belong to other targets and enter neither set (may be an empty mask).
TargetScore rcs_target(const FeatureMap& fm, const BinaryMask& target_aligned,
                       const BinaryMask& ignore, const WindowGrid& grid, const KernelParams& k,
                       bool l2_normalize = false);
TargetScore rcs_target(const FeatureMap& fm, const BinaryMask& target_aligned,
                       const WindowGrid& grid, const KernelParams& k);

SpatialScore rc_s(const RgbImage& image, const BinaryMask& mask, const FeatureBackend& backend,
                  const RcConfig& cfg);

// One window spanning the whole feature map per target.
SpatialScore rc_s_global(const RgbImage& image, const BinaryMask& mask,
                         const FeatureBackend& backend, const RcConfig& cfg);

// Temporal discrepancy of one pair given both feature maps and aligned masks.
PairScore rct_pair(const FeatureMap& f0, const FeatureMap& f1, const BinaryMask& a0,
                   const BinaryMask& a1, const WindowGrid& grid, const KernelParams& k,
                   bool l2_normalize = false);

TemporalScore rc_t(std::span<const RgbImage> frames, std::span<const BinaryMask> masks,
                   const FeatureBackend& backend, const RcConfig& cfg);

}  // namespace rc
