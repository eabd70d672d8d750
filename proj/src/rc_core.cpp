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

#include "rc/rc_core.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "rc/error.hpp"
#include "rc/mask_ops.hpp"
#include "rc/parallel.hpp"
#include "rc/simd/kernels.hpp"

namespace rc {

FeatureSet::FeatureSet(std::size_t dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ == 0 || values_.size() % dim_ != 0) {
    throw Error(ErrorCode::kShapeMismatch, "feature set values are not a multiple of dim");
  }
}

void FeatureSet::push_back(std::span<const double> v) {
  if (v.size() != dim_) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("vector of dim {} pushed into set of dim {}", v.size(), dim_));
  }
  values_.insert(values_.end(), v.begin(), v.end());
}

namespace {

double gamma_of(const KernelParams& k) {
  if (!(k.sigma > 0.0) || !std::isfinite(k.sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "kernel bandwidth must be positive and finite");
  }
  return 1.0 / (2.0 * k.sigma * k.sigma);
}

// sum_{i,j} K(x_i, x_j) using symmetry; the diagonal contributes exactly 1 each.
double self_kernel_sum(const FeatureSet& x, double gamma, const simd::KernelTable& kt) {
  const std::size_t m = x.size();
  double off = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* xi = x.row(i).data();
    for (std::size_t j = i + 1; j < m; ++j) {
      off += std::exp(-gamma * kt.squared_distance(xi, x.row(j).data(), x.dim()));
    }
  }
  return static_cast<double>(m) + 2.0 * off;
}

double cross_kernel_sum(const FeatureSet& x, const FeatureSet& y, double gamma,
                        const simd::KernelTable& kt) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double* xi = x.row(i).data();
    for (std::size_t j = 0; j < y.size(); ++j) {
      sum += std::exp(-gamma * kt.squared_distance(xi, y.row(j).data(), x.dim()));
    }
  }
  return sum;
}

}  // namespace

double rbf_kernel(std::span<const double> x, std::span<const double> y, const KernelParams& k) {
  if (x.size() != y.size()) throw Error(ErrorCode::kShapeMismatch, "rbf_kernel dims differ");
  return std::exp(-gamma_of(k) *
                  simd::active_kernels().squared_distance(x.data(), y.data(), x.size()));
}

double mmd2(const FeatureSet& x, const FeatureSet& y, const KernelParams& k) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::kEmptySet, "mmd2 needs non-empty sets");
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::kShapeMismatch, fmt::format("mmd2 dims {} vs {}", x.dim(), y.dim()));
  }
  const double gamma = gamma_of(k);
  const auto& kt = simd::active_kernels();
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double value = self_kernel_sum(x, gamma, kt) / (m * m) +
                       self_kernel_sum(y, gamma, kt) / (n * n) -
                       2.0 * cross_kernel_sum(x, y, gamma, kt) / (m * n);
  return std::max(0.0, value);
}

WindowGrid window_grid(int h, int w, int window_size, int stride) {
  return window_grid(h, w, window_size, window_size, stride);
}

WindowGrid window_grid(int h, int w, int window_h, int window_w, int stride) {
  if (window_h < 1 || window_w < 1 || stride < 1) {
    throw Error(ErrorCode::kInvalidArgument, "window size and stride must be >= 1");
  }
  if (window_h > h || window_w > w) {
    throw Error(ErrorCode::kWindowTooLarge,
                fmt::format("window {}x{} exceeds feature grid {}x{}", window_h, window_w, h, w));
  }
  auto positions = [stride](int n, int win) {
    std::vector<int> out;
    for (int o = 0; o + win <= n; o += stride) out.push_back(o);
    if (out.back() + win < n) out.push_back(n - win);
    return out;
  };
  WindowGrid grid{h, w, window_h, window_w, stride, {}};
  const auto ys = positions(h, window_h);
  const auto xs = positions(w, window_w);
  grid.origins.reserve(ys.size() * xs.size());
  for (int y : ys) {
    for (int x : xs) grid.origins.push_back({y, x});
  }
  return grid;
}

ResolvedWindow resolve_window(const RcConfig& cfg, int h, int w) {
  auto valid = [](double f) { return f > 0.0 && f <= 1.0; };
  if (!valid(cfg.window_fraction) || !valid(cfg.stride_fraction)) {
    throw Error(ErrorCode::kInvalidArgument, "window/stride fractions must lie in (0, 1]");
  }
  const int side = std::min(h, w);
  return {std::max(1, static_cast<int>(std::floor(side * cfg.window_fraction + 1e-9))),
          std::max(1, static_cast<int>(std::floor(side * cfg.stride_fraction + 1e-9)))};
}

double normalize_rcs(double raw, double tau) { return std::exp(-raw / tau); }
double denormalize_rcs(double normalized, double tau) { return -tau * std::log(normalized); }

FeatureSet cell_vectors(const FeatureMap& fm, bool l2_normalize) {
  const std::size_t cells = fm.cells();
  std::vector<double> values(cells * fm.channels);
  for (int c = 0; c < fm.channels; ++c) {
    const float* plane = fm.values.data() + static_cast<std::size_t>(c) * cells;
    for (std::size_t i = 0; i < cells; ++i) values[i * fm.channels + c] = plane[i];
  }
  if (l2_normalize) {
    for (std::size_t i = 0; i < cells; ++i) {
      double* v = values.data() + i * fm.channels;
      double norm = 0.0;
      for (int c = 0; c < fm.channels; ++c) norm += v[c] * v[c];
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (int c = 0; c < fm.channels; ++c) v[c] /= norm;
      }
    }
  }
  return FeatureSet(static_cast<std::size_t>(fm.channels), std::move(values));
}

BinaryMask align_mask(const BinaryMask& mask_crop, int grid_w, int grid_h) {
  BinaryMask aligned = downsample_mask(mask_crop, grid_w, grid_h);
  if (!aligned.any() && mask_crop.any()) aligned = downsample_mask_touched(mask_crop, grid_w, grid_h);
  return aligned;
}

namespace {

void require_grid_match(const FeatureMap& fm, const BinaryMask& m, const WindowGrid& grid) {
  if (m.width != fm.width || m.height != fm.height || grid.grid_w != fm.width ||
      grid.grid_h != fm.height) {
    throw Error(ErrorCode::kShapeMismatch, "aligned mask / window grid do not match feature map");
  }
}

double mean_of(const std::vector<WindowScore>& windows) {
  double sum = 0.0;
  for (const WindowScore& w : windows) sum += w.discrepancy;
  return sum / static_cast<double>(windows.size());
}

}  // namespace

TargetScore rcs_target(const FeatureMap& fm, const BinaryMask& target_aligned,
                       const BinaryMask& ignore, const WindowGrid& grid, const KernelParams& k,
                       bool l2_normalize) {
  require_grid_match(fm, target_aligned, grid);
  const bool have_ignore = !ignore.data.empty();
  if (have_ignore && !ignore.same_dims(target_aligned)) {
    throw Error(ErrorCode::kShapeMismatch, "ignore mask does not match feature map");
  }
  if (!target_aligned.any()) throw Error(ErrorCode::kEmptyMask, "target has no cell on the feature grid");

  const FeatureSet cells = cell_vectors(fm, l2_normalize);
  const std::size_t dim = cells.dim();
  auto is_ignored = [&](std::size_t i) { return have_ignore && ignore.data[i] && !target_aligned.data[i]; };

  FeatureSet crop_bg(dim);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!target_aligned.data[i] && !is_ignored(i)) crop_bg.push_back(cells.row(i));
  }
  if (crop_bg.empty()) {
    throw Error(ErrorCode::kDegenerateCrop, "crop has no unmasked feature cell");
  }

  TargetScore score;
  for (const WindowOrigin& o : grid.origins) {
    FeatureSet masked(dim), bg(dim);
    for (int y = o.y; y < o.y + grid.window_h; ++y) {
      for (int x = o.x; x < o.x + grid.window_w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * fm.width + x;
        if (target_aligned.data[i]) {
          masked.push_back(cells.row(i));
        } else if (!is_ignored(i)) {
          bg.push_back(cells.row(i));
        }
      }
    }
    if (masked.empty()) continue;
    WindowScore ws;
    ws.origin = o;
    ws.masked_cells = masked.size();
    ws.crop_background = bg.empty();
    ws.discrepancy = mmd2(masked, ws.crop_background ? crop_bg : bg, k);
    score.windows.push_back(ws);
  }
  if (score.windows.empty()) {
    throw Error(ErrorCode::kDegenerateCrop, "no window intersects the target (stride > window?)");
  }
  score.mean = mean_of(score.windows);
  return score;
}

TargetScore rcs_target(const FeatureMap& fm, const BinaryMask& target_aligned,
                       const WindowGrid& grid, const KernelParams& k) {
  return rcs_target(fm, target_aligned, BinaryMask{}, grid, k, false);
}

namespace {

void require_frame_mask(const RgbImage& image, const BinaryMask& mask) {
  if (image.width != mask.width || image.height != mask.height) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("image {}x{} vs mask {}x{}", image.width, image.height, mask.width,
                            mask.height));
  }
}

// rc_s / rc_s_global differ only in how the window grid is chosen.
template <typename GridFor>
SpatialScore spatial_score(const RgbImage& image, const BinaryMask& mask,
                           const FeatureBackend& backend, const RcConfig& cfg, GridFor grid_for) {
  require_frame_mask(image, mask);
  const std::vector<TargetRegion> regions = connected_components(mask);
  if (regions.empty()) throw Error(ErrorCode::kEmptyMask, "mask has no target");

  std::vector<TargetScore> targets(regions.size());
  std::vector<WindowGrid> grids(regions.size());
  parallel_for(regions.size(), cfg.jobs, [&](std::size_t r) {
    const TargetRegion& region = regions[r];
    const BoundingBox& box = region.expanded_box;
    const FeatureMap fm = backend.extract(to_planar(crop_image(image, box)));
    const BinaryMask target = align_mask(crop_mask(region.component_mask, box), fm.width, fm.height);
    const BinaryMask all = align_mask(crop_mask(mask, box), fm.width, fm.height);
    grids[r] = grid_for(fm.height, fm.width);
    targets[r] = rcs_target(fm, target, all, grids[r], cfg.kernel, cfg.l2_normalize);
    targets[r].component_id = region.component_id;
    targets[r].crop_box = box;
  });

  SpatialScore out;
  double sum = 0.0;
  for (const TargetScore& t : targets) sum += t.mean;
  out.rc_s_raw = sum / static_cast<double>(targets.size());
  out.rc_s_normalized = normalize_rcs(out.rc_s_raw, cfg.tau);
  out.window_size = grids.front().window_h;
  out.stride = grids.front().stride;
  out.per_target = std::move(targets);
  return out;
}

}  // namespace

SpatialScore rc_s(const RgbImage& image, const BinaryMask& mask, const FeatureBackend& backend,
                  const RcConfig& cfg) {
  return spatial_score(image, mask, backend, cfg, [&cfg](int h, int w) {
    const ResolvedWindow rw = resolve_window(cfg, h, w);
    return window_grid(h, w, rw.window, rw.stride);
  });
}

SpatialScore rc_s_global(const RgbImage& image, const BinaryMask& mask,
                         const FeatureBackend& backend, const RcConfig& cfg) {
  return spatial_score(image, mask, backend, cfg,
                       [](int h, int w) { return window_grid(h, w, h, w, 1); });
}

PairScore rct_pair(const FeatureMap& f0, const FeatureMap& f1, const BinaryMask& a0,
                   const BinaryMask& a1, const WindowGrid& grid, const KernelParams& k,
                   bool l2_normalize) {
  if (f0.channels != f1.channels || f0.height != f1.height || f0.width != f1.width) {
    throw Error(ErrorCode::kShapeMismatch, "adjacent frames produced different feature dims");
  }
  require_grid_match(f0, a0, grid);
  require_grid_match(f1, a1, grid);
  const BinaryMask shared = mask_intersection(a0, a1);
  PairScore score;
  if (!shared.any()) return score;

  const FeatureSet c0 = cell_vectors(f0, l2_normalize);
  const FeatureSet c1 = cell_vectors(f1, l2_normalize);
  for (const WindowOrigin& o : grid.origins) {
    FeatureSet x0(c0.dim()), x1(c1.dim());
    for (int y = o.y; y < o.y + grid.window_h; ++y) {
      for (int x = o.x; x < o.x + grid.window_w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * f0.width + x;
        if (!shared.data[i]) continue;
        x0.push_back(c0.row(i));
        x1.push_back(c1.row(i));
      }
    }
    if (x0.empty()) continue;
    WindowScore ws;
    ws.origin = o;
    ws.masked_cells = x0.size();
    ws.discrepancy = mmd2(x0, x1, k);
    score.windows.push_back(ws);
  }
  if (score.windows.empty()) return score;
  score.valid = true;
  score.mean = mean_of(score.windows);
  return score;
}

TemporalScore rc_t(std::span<const RgbImage> frames, std::span<const BinaryMask> masks,
                   const FeatureBackend& backend, const RcConfig& cfg) {
  if (frames.size() != masks.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("{} frames but {} masks", frames.size(), masks.size()));
  }
  if (frames.size() < 2) throw Error(ErrorCode::kTooFewFrames, "rc_t needs at least 2 frames");
  for (std::size_t t = 0; t < frames.size(); ++t) {
    require_frame_mask(frames[t], masks[t]);
    if (frames[t].width != frames[0].width || frames[t].height != frames[0].height) {
      throw Error(ErrorCode::kShapeMismatch, fmt::format("frame {} has different dims", t));
    }
  }

  const std::size_t pairs = frames.size() - 1;
  std::vector<PairScore> scores(pairs);
  std::vector<ResolvedWindow> windows(pairs);
  parallel_for(pairs, cfg.jobs, [&](std::size_t t) {
    PairScore& ps = scores[t];
    ps.t = static_cast<int>(t);
    const BinaryMask uni = mask_union(masks[t], masks[t + 1]);
    if (!uni.any()) return;
    const BoundingBox box = expand_box(tight_bounding_box(uni), uni.width, uni.height);
    const FeatureMap f0 = backend.extract(to_planar(crop_image(frames[t], box)));
    const FeatureMap f1 = backend.extract(to_planar(crop_image(frames[t + 1], box)));
    const BinaryMask a0 = align_mask(crop_mask(masks[t], box), f0.width, f0.height);
    const BinaryMask a1 = align_mask(crop_mask(masks[t + 1], box), f1.width, f1.height);
    windows[t] = resolve_window(cfg, f0.height, f0.width);
    const WindowGrid grid = window_grid(f0.height, f0.width, windows[t].window, windows[t].stride);
    ps = rct_pair(f0, f1, a0, a1, grid, cfg.kernel, cfg.l2_normalize);
    ps.t = static_cast<int>(t);
    ps.crop_box = box;
  });

  TemporalScore out;
  double sum = 0.0;
  for (std::size_t t = 0; t < pairs; ++t) {
    if (!scores[t].valid) continue;
    sum += scores[t].mean;
    ++out.valid_pairs;
    if (out.window_size == 0) {
      out.window_size = windows[t].window;
      out.stride = windows[t].stride;
    }
  }
  if (out.valid_pairs > 0) out.rc_t = sum / static_cast<double>(out.valid_pairs);
  out.per_pair = std::move(scores);
  return out;
}

}  // namespace rc
