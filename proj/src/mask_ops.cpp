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

#include "rc/mask_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "rc/error.hpp"

namespace rc {
namespace {

void require_same_dims(const BinaryMask& a, const BinaryMask& b, const char* op) {
  if (!a.same_dims(b)) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(op) + ": " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                    std::to_string(b.height));
  }
}

// Labels 8-connected components in raster order of their first pixel.
// Returns the number of components; labels are 1-based, 0 = background.
int label_components(const BinaryMask& mask, std::vector<int>& labels) {
  const int w = mask.width;
  const int h = mask.height;
  labels.assign(mask.data.size(), 0);
  std::vector<int> stack;
  int next = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int seed = y * w + x;
      if (!mask.data[seed] || labels[seed]) continue;
      labels[seed] = ++next;
      stack.push_back(seed);
      while (!stack.empty()) {
        const int p = stack.back();
        stack.pop_back();
        const int px = p % w;
        const int py = p / w;
        for (int dy = -1; dy <= 1; ++dy) {
          const int ny = py + dy;
          if (ny < 0 || ny >= h) continue;
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = px + dx;
            if (nx < 0 || nx >= w) continue;
            const int q = ny * w + nx;
            if (mask.data[q] && !labels[q]) {
              labels[q] = next;
              stack.push_back(q);
            }
          }
        }
      }
    }
  }
  return next;
}

struct AxisTap {
  int src;
  std::int64_t weight;
};

// For each output index, the source indices overlapping it and the overlap
// length in units where a source pixel is `dst` long and an output cell `src`.
std::vector<std::vector<AxisTap>> axis_overlaps(int src, int dst) {
  std::vector<std::vector<AxisTap>> out(dst);
  for (int o = 0; o < dst; ++o) {
    const std::int64_t lo = static_cast<std::int64_t>(o) * src;
    const std::int64_t hi = lo + src;
    const int first = static_cast<int>(lo / dst);
    const int last = static_cast<int>((hi + dst - 1) / dst);
    for (int s = first; s < last && s < src; ++s) {
      const std::int64_t plo = static_cast<std::int64_t>(s) * dst;
      const std::int64_t ov = std::min(plo + dst, hi) - std::max(plo, lo);
      if (ov > 0) out[o].push_back({s, ov});
    }
  }
  return out;
}

}  // namespace

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(data.begin(), data.end(), std::uint8_t{1}));
}

bool BinaryMask::any() const {
  return std::any_of(data.begin(), data.end(), [](std::uint8_t v) { return v != 0; });
}

BoundingBox tight_bounding_box(const BinaryMask& mask) {
  int x0 = mask.width, y0 = mask.height, x1 = 0, y1 = 0;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x + 1);
      y1 = std::max(y1, y + 1);
    }
  }
  if (x1 == 0) return {};
  return {x0, y0, x1, y1};
}

std::vector<TargetRegion> connected_components(const BinaryMask& mask) {
  std::vector<int> labels;
  const int n = label_components(mask, labels);
  std::vector<TargetRegion> regions(n);
  for (int i = 0; i < n; ++i) {
    regions[i].component_mask = BinaryMask(mask.width, mask.height);
    regions[i].tight_box = {mask.width, mask.height, 0, 0};
  }
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const int l = labels[static_cast<std::size_t>(y) * mask.width + x];
      if (!l) continue;
      TargetRegion& r = regions[l - 1];
      r.component_mask.set(x, y);
      r.tight_box.x0 = std::min(r.tight_box.x0, x);
      r.tight_box.y0 = std::min(r.tight_box.y0, y);
      r.tight_box.x1 = std::max(r.tight_box.x1, x + 1);
      r.tight_box.y1 = std::max(r.tight_box.y1, y + 1);
      ++r.area;
    }
  }
  // Stable sort keeps raster-of-first-pixel order for equal (y0, x0).
  std::stable_sort(regions.begin(), regions.end(), [](const TargetRegion& a, const TargetRegion& b) {
    if (a.tight_box.y0 != b.tight_box.y0) return a.tight_box.y0 < b.tight_box.y0;
    return a.tight_box.x0 < b.tight_box.x0;
  });
  for (int i = 0; i < n; ++i) {
    regions[i].component_id = i + 1;
    regions[i].expanded_box = expand_box(regions[i].tight_box, mask.width, mask.height);
  }
  return regions;
}

BoundingBox expand_box(const BoundingBox& box, int image_w, int image_h) {
  const int dx = box.width() / 3;
  const int dy = box.height() / 3;
  return {std::max(0, box.x0 - dx), std::max(0, box.y0 - dy), std::min(image_w, box.x1 + dx),
          std::min(image_h, box.y1 + dy)};
}

RgbImage crop_image(const RgbImage& image, const BoundingBox& box) {
  if (box.x0 < 0 || box.y0 < 0 || box.x1 > image.width || box.y1 > image.height ||
      box.width() <= 0 || box.height() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "crop box outside image");
  }
  RgbImage out(box.width(), box.height());
  const std::size_t row_bytes = static_cast<std::size_t>(box.width()) * 3;
  for (int y = 0; y < box.height(); ++y) {
    std::copy_n(image.px(box.x0, box.y0 + y), row_bytes, out.px(0, y));
  }
  return out;
}

BinaryMask crop_mask(const BinaryMask& mask, const BoundingBox& box) {
  if (box.x0 < 0 || box.y0 < 0 || box.x1 > mask.width || box.y1 > mask.height ||
      box.width() <= 0 || box.height() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "crop box outside mask");
  }
  BinaryMask out(box.width(), box.height());
  for (int y = 0; y < box.height(); ++y) {
    for (int x = 0; x < box.width(); ++x) out.set(x, y, mask(box.x0 + x, box.y0 + y));
  }
  return out;
}

CropPair crop_pair(const RgbImage& image, const BinaryMask& mask, const BoundingBox& box) {
  if (image.width != mask.width || image.height != mask.height) {
    throw Error(ErrorCode::kShapeMismatch, "crop_pair: image and mask dims differ");
  }
  return {crop_image(image, box), crop_mask(mask, box), box};
}

BinaryMask downsample_mask(const BinaryMask& mask, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) {
    throw Error(ErrorCode::kInvalidArgument, "downsample_mask: target dims must be >= 1");
  }
  if (target_w == mask.width && target_h == mask.height) return mask;
  const auto xs = axis_overlaps(mask.width, target_w);
  const auto ys = axis_overlaps(mask.height, target_h);
  const std::int64_t cell_area = static_cast<std::int64_t>(mask.width) * mask.height;
  BinaryMask out(target_w, target_h);
  for (int oy = 0; oy < target_h; ++oy) {
    for (int ox = 0; ox < target_w; ++ox) {
      std::int64_t covered = 0;
      for (const AxisTap& ty : ys[oy]) {
        std::int64_t row = 0;
        for (const AxisTap& tx : xs[ox]) row += tx.weight * mask(tx.src, ty.src);
        covered += row * ty.weight;
      }
      out.set(ox, oy, 2 * covered >= cell_area);
    }
  }
  return out;
}

BinaryMask downsample_mask_touched(const BinaryMask& mask, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) {
    throw Error(ErrorCode::kInvalidArgument, "downsample_mask_touched: target dims must be >= 1");
  }
  const auto xs = axis_overlaps(mask.width, target_w);
  const auto ys = axis_overlaps(mask.height, target_h);
  BinaryMask out(target_w, target_h);
  for (int oy = 0; oy < target_h; ++oy) {
    for (int ox = 0; ox < target_w; ++ox) {
      bool touched = false;
      for (const AxisTap& ty : ys[oy]) {
        for (const AxisTap& tx : xs[ox]) touched = touched || mask(tx.src, ty.src);
      }
      out.set(ox, oy, touched);
    }
  }
  return out;
}

BinaryMask resample_mask_window(const BinaryMask& mask, double x0, double y0, double w,
                                double h, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1 || w <= 0.0 || h <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "resample_mask_window: bad window or target");
  }
  const double cw = w / target_w;
  const double ch = h / target_h;
  auto overlaps = [](double lo, double hi, int limit) {
    std::vector<std::pair<int, double>> taps;
    const int first = std::max(0, static_cast<int>(std::floor(lo)));
    const int last = std::min(limit, static_cast<int>(std::ceil(hi)));
    for (int s = first; s < last; ++s) {
      const double ov = std::min<double>(s + 1, hi) - std::max<double>(s, lo);
      if (ov > 0.0) taps.emplace_back(s, ov);
    }
    return taps;
  };
  BinaryMask out(target_w, target_h);
  for (int oy = 0; oy < target_h; ++oy) {
    const auto ty = overlaps(y0 + oy * ch, y0 + (oy + 1) * ch, mask.height);
    for (int ox = 0; ox < target_w; ++ox) {
      const auto tx = overlaps(x0 + ox * cw, x0 + (ox + 1) * cw, mask.width);
      double covered = 0.0;
      for (const auto& [sy, wy] : ty) {
        for (const auto& [sx, wx] : tx) covered += wx * wy * mask(sx, sy);
      }
      // Small slack so integer-aligned windows match downsample_mask exactly.
      out.set(ox, oy, covered >= 0.5 * cw * ch - 1e-9);
    }
  }
  return out;
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "mask_union");
  BinaryMask out(a.width, a.height);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] | b.data[i];
  return out;
}

BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "mask_intersection");
  BinaryMask out(a.width, a.height);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] & b.data[i];
  return out;
}

double mask_psnr(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a, b, "mask_psnr");
  if (a.data.empty()) throw Error(ErrorCode::kEmptyInput, "mask_psnr: empty masks");
  std::size_t differing = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) differing += a.data[i] != b.data[i];
  if (differing == 0) return kPsnrInfinity;
  constexpr double kMax = 255.0;
  const double mse = kMax * kMax * static_cast<double>(differing) / static_cast<double>(a.data.size());
  return 10.0 * std::log10(kMax * kMax / mse);
}

BinaryMask artifact_mask(const BinaryMask& m_diff, const BinaryMask& m_gt) {
  require_same_dims(m_diff, m_gt, "artifact_mask");
  BinaryMask out(m_diff.width, m_diff.height);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = (m_diff.data[i] && !m_gt.data[i]) ? 1 : 0;
  }
  return out;
}

std::size_t max_component_area(const BinaryMask& mask) {
  std::vector<int> labels;
  const int n = label_components(mask, labels);
  if (n == 0) return 0;
  std::vector<std::size_t> areas(n + 1, 0);
  for (int l : labels) ++areas[l];
  return *std::max_element(areas.begin() + 1, areas.end());
}

namespace {

template <bool kErode>
BinaryMask morph3x3(const BinaryMask& mask) {
  BinaryMask out(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      bool v = kErode;
      for (int dy = -1; dy <= 1; ++dy) {
        const int ny = y + dy;
        if (ny < 0 || ny >= mask.height) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          if (nx < 0 || nx >= mask.width) continue;
          if constexpr (kErode) {
            v = v && mask(nx, ny);
          } else {
            v = v || mask(nx, ny);
          }
        }
      }
      out.set(x, y, v);
    }
  }
  return out;
}

}  // namespace

BinaryMask erode3x3(const BinaryMask& mask) { return morph3x3<true>(mask); }
BinaryMask dilate3x3(const BinaryMask& mask) { return morph3x3<false>(mask); }
BinaryMask open3x3(const BinaryMask& mask) { return dilate3x3(erode3x3(mask)); }

Centroid mask_centroid(const BinaryMask& mask) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask(x, y)) continue;
      sx += x;
      sy += y;
      ++n;
    }
  }
  if (n == 0) throw Error(ErrorCode::kEmptyMask, "mask_centroid of empty mask");
  return {sx / n, sy / n};
}

}  // namespace rc
