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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rc/image.hpp"
#include "rc/mask_ops.hpp"

namespace rc {

// Input video, target-free ground truth and ground-truth masks of one scene.
struct PairedSample {
  std::string id;
  std::vector<RgbImage> input;
  std::vector<RgbImage> gt;
  std::vector<BinaryMask> gt_masks;
  double fps = 24.0;  // from meta.json when present

  std::size_t size() const { return input.size(); }
};

// Throws ShapeMismatch unless all streams share length and frame dims.
void validate(const PairedSample& sample);

// Reads <dir>/{input,gt,mask}/ and the optional meta.json; the id is the directory name.
PairedSample load_paired_sample(const std::filesystem::path& dir);
void save_paired_sample(const PairedSample& sample, const std::filesystem::path& dir);

inline constexpr double kDefaultDiffThreshold = 25.0;  // luma levels out of 255

// Set where |luma(input) - luma(gt)| > threshold, then a 3x3 opening.
BinaryMask diff_mask(const RgbImage& input_frame, const RgbImage& gt_frame,
                     double threshold = kDefaultDiffThreshold);

inline constexpr double kStage1PsnrCap = 100.0;  // dB, replaces the identical-mask sentinel

// Per-frame mask PSNR between diff_mask and the GT mask, sentinel capped.
std::vector<double> stage1_frame_scores(const PairedSample& sample,
                                        double diff_threshold = kDefaultDiffThreshold);
double stage1_score(const PairedSample& sample, double diff_threshold = kDefaultDiffThreshold);

struct ScoredSample {
  std::string id;
  double score = 0.0;
};

// Top ceil(keep_fraction * N) by descending score, ties by id; returned in rank order.
std::vector<ScoredSample> stage1_filter(std::vector<ScoredSample> samples, double keep_fraction = 0.40);

inline constexpr std::size_t kDefaultAreaThreshold = 1000;

struct Stage2Result {
  bool pass = true;
  std::vector<std::size_t> frame_max_area;
  std::size_t worst_area = 0;
};

// Fails iff some frame's largest artifact component is strictly above the threshold.
Stage2Result stage2_check(const PairedSample& sample, std::size_t area_threshold = kDefaultAreaThreshold,
                          double diff_threshold = kDefaultDiffThreshold);

struct QcConfig {
  double keep_fraction = 0.40;
  std::size_t area_threshold = kDefaultAreaThreshold;
  double diff_threshold = kDefaultDiffThreshold;
  int jobs = 1;
};

// Stage 1 over all samples, Stage 2 over the Stage-1 survivors; the manifest
// lists samples passing both, for human review.
nlohmann::json run_qc(std::span<const PairedSample> samples, const QcConfig& cfg);

// ---------------------------------------------------------------------------
// Ken Burns motion augmentation

enum class MotionStyle { kShake, kZoom, kFollow };

std::string_view motion_style_name(MotionStyle style);
MotionStyle parse_motion_style(std::string_view name);

struct MotionAmplitude {
  double translate = 0.0;  // shake: max offset in pixels
  double zoom_from = 1.0;  // zoom: first-frame scale
  double zoom_to = 1.0;    // zoom: last-frame scale; follow: constant scale
  int knot_spacing = 12;   // shake: frames between random offsets
};

// Source crop window in edge coordinates.
struct CropWindow {
  double x0 = 0.0;
  double y0 = 0.0;
  double w = 0.0;
  double h = 0.0;
  friend bool operator==(const CropWindow&, const CropWindow&) = default;
};

struct FrameTransform {
  double scale = 1.0;
  double translate_x = 0.0;
  double translate_y = 0.0;
  CropWindow window;

  // Pixel-centre coordinates between the source frame and an out_w x out_h output.
  std::array<double, 2> to_output(double x, double y, int out_w, int out_h) const;
  std::array<double, 2> to_source(double ox, double oy, int out_w, int out_h) const;
  friend bool operator==(const FrameTransform&, const FrameTransform&) = default;
};

struct KenBurnsTrack {
  MotionStyle style = MotionStyle::kShake;
  std::uint64_t seed = 0;
  int src_w = 0;
  int src_h = 0;
  std::vector<FrameTransform> frames;
};

// `follow` needs one centroid per frame (empty entries hold the previous one).
KenBurnsTrack make_kenburns_track(MotionStyle style, std::uint64_t seed, int n_frames, int src_w,
                                  int src_h, const MotionAmplitude& amplitude,
                                  std::span<const std::optional<Centroid>> follow_path = {});

std::vector<std::optional<Centroid>> mask_centroids(std::span<const BinaryMask> masks);

struct AugmentedSample {
  PairedSample sample;
  // Transform applied per frame to input, gt and mask, in that order.
  std::array<std::vector<FrameTransform>, 3> applied;
};

AugmentedSample apply_kenburns(const PairedSample& sample, const KenBurnsTrack& track, int out_w,
                               int out_h);

RgbImage warp_frame(const RgbImage& frame, const FrameTransform& xf, int out_w, int out_h);
BinaryMask warp_mask(const BinaryMask& mask, const FrameTransform& xf, int out_w, int out_h);

nlohmann::json track_json(const KenBurnsTrack& track);

}  // namespace rc
