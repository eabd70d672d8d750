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

#include "rc/bench_qc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "rc/error.hpp"
#include "rc/image_io.hpp"
#include "rc/parallel.hpp"
#include "rc/resample.hpp"

namespace rc {
namespace fs = std::filesystem;

void validate(const PairedSample& sample) {
  const std::size_t n = sample.input.size();
  if (sample.gt.size() != n || sample.gt_masks.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("sample '{}': {} input, {} gt, {} mask frames", sample.id, n,
                            sample.gt.size(), sample.gt_masks.size()));
  }
  for (std::size_t t = 0; t < n; ++t) {
    const int w = sample.input[0].width;
    const int h = sample.input[0].height;
    if (sample.input[t].width != w || sample.input[t].height != h || sample.gt[t].width != w ||
        sample.gt[t].height != h || sample.gt_masks[t].width != w || sample.gt_masks[t].height != h) {
      throw Error(ErrorCode::kShapeMismatch, fmt::format("sample '{}': frame {} dims differ", sample.id, t));
    }
  }
}

PairedSample load_paired_sample(const fs::path& dir) {
  PairedSample s;
  s.id = dir.filename().string();
  s.input = read_frames(dir / "input");
  s.gt = read_frames(dir / "gt");
  s.gt_masks = read_masks(dir / "mask");
  validate(s);
  if (std::ifstream meta{dir / "meta.json"}) {
    const nlohmann::json j = nlohmann::json::parse(meta, nullptr, false);
    if (j.is_object() && j.contains("fps") && j["fps"].is_number()) s.fps = j["fps"].get<double>();
  }
  return s;
}

void save_paired_sample(const PairedSample& sample, const fs::path& dir) {
  write_frames(sample.input, dir / "input");
  write_frames(sample.gt, dir / "gt");
  write_masks(sample.gt_masks, dir / "mask");
  nlohmann::json meta = {{"fps", sample.fps}, {"frames", sample.size()}};
  if (!sample.input.empty()) {
    meta["width"] = sample.input[0].width;
    meta["height"] = sample.input[0].height;
  }
  std::ofstream out(dir / "meta.json");
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", (dir / "meta.json").string()));
  out << meta.dump(2) << "\n";
}

BinaryMask diff_mask(const RgbImage& input_frame, const RgbImage& gt_frame, double threshold) {
  if (input_frame.width != gt_frame.width || input_frame.height != gt_frame.height) {
    throw Error(ErrorCode::kShapeMismatch, "diff_mask: frame dims differ");
  }
  const std::vector<float> a = to_gray(input_frame);
  const std::vector<float> b = to_gray(gt_frame);
  BinaryMask raw(input_frame.width, input_frame.height);
  for (std::size_t i = 0; i < a.size(); ++i) raw.data[i] = std::abs(a[i] - b[i]) > threshold ? 1 : 0;
  return open3x3(raw);
}

std::vector<double> stage1_frame_scores(const PairedSample& sample, double diff_threshold) {
  validate(sample);
  if (sample.size() == 0) throw Error(ErrorCode::kEmptyInput, fmt::format("sample '{}' is empty", sample.id));
  std::vector<double> out(sample.size());
  for (std::size_t t = 0; t < sample.size(); ++t) {
    const double psnr =
        mask_psnr(diff_mask(sample.input[t], sample.gt[t], diff_threshold), sample.gt_masks[t]);
    out[t] = std::min(psnr, kStage1PsnrCap);
  }
  return out;
}

double stage1_score(const PairedSample& sample, double diff_threshold) {
  const std::vector<double> frames = stage1_frame_scores(sample, diff_threshold);
  double sum = 0.0;
  for (double v : frames) sum += v;
  return sum / static_cast<double>(frames.size());
}

std::vector<ScoredSample> stage1_filter(std::vector<ScoredSample> samples, double keep_fraction) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "stage1_filter: no samples");
  if (!(keep_fraction > 0.0) || keep_fraction > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "keep fraction must lie in (0, 1]");
  }
  std::sort(samples.begin(), samples.end(), [](const ScoredSample& a, const ScoredSample& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  const auto keep = static_cast<std::size_t>(
      std::ceil(keep_fraction * static_cast<double>(samples.size()) - 1e-9));
  samples.resize(std::clamp<std::size_t>(keep, 1, samples.size()));
  return samples;
}

Stage2Result stage2_check(const PairedSample& sample, std::size_t area_threshold, double diff_threshold) {
  validate(sample);
  Stage2Result r;
  r.frame_max_area.resize(sample.size());
  for (std::size_t t = 0; t < sample.size(); ++t) {
    const BinaryMask artifacts =
        artifact_mask(diff_mask(sample.input[t], sample.gt[t], diff_threshold), sample.gt_masks[t]);
    r.frame_max_area[t] = max_component_area(artifacts);
    r.worst_area = std::max(r.worst_area, r.frame_max_area[t]);
  }
  r.pass = r.worst_area <= area_threshold;
  return r;
}

nlohmann::json run_qc(std::span<const PairedSample> samples, const QcConfig& cfg) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "qc: no samples");
  std::vector<std::vector<double>> frame_scores(samples.size());
  std::vector<ScoredSample> scored(samples.size());
  parallel_for(samples.size(), cfg.jobs, [&](std::size_t i) {
    frame_scores[i] = stage1_frame_scores(samples[i], cfg.diff_threshold);
    double sum = 0.0;
    for (double v : frame_scores[i]) sum += v;
    scored[i] = {samples[i].id, sum / static_cast<double>(frame_scores[i].size())};
  });
  const std::vector<ScoredSample> retained = stage1_filter(scored, cfg.keep_fraction);

  std::vector<std::size_t> retained_idx;
  for (const ScoredSample& r : retained) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].id == r.id) {
        retained_idx.push_back(i);
        break;
      }
    }
  }
  std::vector<std::optional<Stage2Result>> stage2(samples.size());
  parallel_for(retained_idx.size(), cfg.jobs, [&](std::size_t k) {
    const std::size_t i = retained_idx[k];
    stage2[i] = stage2_check(samples[i], cfg.area_threshold, cfg.diff_threshold);
  });

  nlohmann::json per_sample = nlohmann::json::array();
  std::vector<std::size_t> by_id(samples.size());
  for (std::size_t i = 0; i < by_id.size(); ++i) by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) { return samples[a].id < samples[b].id; });
  for (std::size_t i : by_id) {
    nlohmann::json j = {{"id", samples[i].id},
                        {"stage1_score", scored[i].score},
                        {"stage1_frame_psnr", frame_scores[i]},
                        {"stage1_retained", stage2[i].has_value()}};
    if (stage2[i]) {
      j["stage2"] = {{"frame_max_area", stage2[i]->frame_max_area},
                     {"worst_area", stage2[i]->worst_area},
                     {"pass", stage2[i]->pass}};
    } else {
      j["stage2"] = nullptr;
    }
    j["pass"] = stage2[i] && stage2[i]->pass;
    per_sample.push_back(std::move(j));
  }
  nlohmann::json stage1_ids = nlohmann::json::array();
  nlohmann::json manifest = nlohmann::json::array();
  for (const ScoredSample& r : retained) {
    stage1_ids.push_back(r.id);
    for (std::size_t i : retained_idx) {
      if (samples[i].id == r.id && stage2[i]->pass) manifest.push_back(r.id);
    }
  }
  return {{"config",
           {{"keep_fraction", cfg.keep_fraction},
            {"area_threshold", cfg.area_threshold},
            {"diff_threshold", cfg.diff_threshold}}},
          {"samples", std::move(per_sample)},
          {"stage1_retained", std::move(stage1_ids)},
          {"manifest", std::move(manifest)}};
}

// ---------------------------------------------------------------------------
// Ken Burns

std::string_view motion_style_name(MotionStyle style) {
  switch (style) {
    case MotionStyle::kShake: return "shake";
    case MotionStyle::kZoom: return "zoom";
    case MotionStyle::kFollow: return "follow";
  }
  return "unknown";
}

MotionStyle parse_motion_style(std::string_view name) {
  if (name == "shake") return MotionStyle::kShake;
  if (name == "zoom") return MotionStyle::kZoom;
  if (name == "follow") return MotionStyle::kFollow;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown motion style '{}'", name));
}

std::array<double, 2> FrameTransform::to_output(double x, double y, int out_w, int out_h) const {
  return {(x + 0.5 - window.x0) * out_w / window.w - 0.5, (y + 0.5 - window.y0) * out_h / window.h - 0.5};
}

std::array<double, 2> FrameTransform::to_source(double ox, double oy, int out_w, int out_h) const {
  return {window.x0 + (ox + 0.5) * window.w / out_w - 0.5, window.y0 + (oy + 0.5) * window.h / out_h - 0.5};
}

namespace {

FrameTransform make_transform(double scale, double tx, double ty, int w, int h) {
  FrameTransform f;
  f.scale = scale;
  f.translate_x = tx;
  f.translate_y = ty;
  f.window.w = w / scale;
  f.window.h = h / scale;
  f.window.x0 = w / 2.0 + tx - f.window.w / 2.0;
  f.window.y0 = h / 2.0 + ty - f.window.h / 2.0;
  return f;
}

bool inside(const CropWindow& c, int w, int h) {
  constexpr double kEps = 1e-9;
  return c.x0 >= -kEps && c.y0 >= -kEps && c.x0 + c.w <= w + kEps && c.y0 + c.h <= h + kEps;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Smooth offsets in [-amp, amp]: random knots joined by cosine easing.
std::vector<double> smooth_noise(std::mt19937_64& rng, int n, int spacing, double amp) {
  const int knots = (n - 1) / spacing + 2;
  std::vector<double> k(knots);
  for (double& v : k) v = (2.0 * unit_uniform(rng) - 1.0) * amp;
  std::vector<double> out(n);
  for (int t = 0; t < n; ++t) {
    const int i = t / spacing;
    const double u = static_cast<double>(t % spacing) / spacing;
    const double e = 0.5 - 0.5 * std::cos(u * std::numbers::pi);
    out[t] = k[i] + (k[i + 1] - k[i]) * e;
  }
  return out;
}

}  // namespace

KenBurnsTrack make_kenburns_track(MotionStyle style, std::uint64_t seed, int n_frames, int src_w,
                                  int src_h, const MotionAmplitude& amp,
                                  std::span<const std::optional<Centroid>> follow_path) {
  if (n_frames < 1) throw Error(ErrorCode::kInvalidArgument, "track needs >= 1 frame");
  if (src_w < 1 || src_h < 1) throw Error(ErrorCode::kInvalidArgument, "bad source dims");
  KenBurnsTrack track{style, seed, src_w, src_h, {}};
  track.frames.reserve(n_frames);
  std::mt19937_64 rng(seed);

  switch (style) {
    case MotionStyle::kShake: {
      const double a = amp.translate;
      if (a < 0.0 || 2.0 * a >= src_w || 2.0 * a >= src_h) {
        throw Error(ErrorCode::kAmplitudeTooLarge, fmt::format("shake amplitude {} too large", a));
      }
      // Smallest zoom that leaves `a` pixels of slack on every side.
      const double scale = std::max(src_w / (src_w - 2.0 * a), src_h / (src_h - 2.0 * a));
      const int spacing = std::max(1, amp.knot_spacing);
      const auto xs = smooth_noise(rng, n_frames, spacing, a);
      const auto ys = smooth_noise(rng, n_frames, spacing, a);
      for (int t = 0; t < n_frames; ++t) track.frames.push_back(make_transform(scale, xs[t], ys[t], src_w, src_h));
      break;
    }
    case MotionStyle::kZoom: {
      if (amp.zoom_from < 1.0 || amp.zoom_to < 1.0) {
        throw Error(ErrorCode::kAmplitudeTooLarge, "zoom scales below 1 leave the frame");
      }
      for (int t = 0; t < n_frames; ++t) {
        const double u = n_frames > 1 ? static_cast<double>(t) / (n_frames - 1) : 0.0;
        track.frames.push_back(
            make_transform(amp.zoom_from + (amp.zoom_to - amp.zoom_from) * u, 0.0, 0.0, src_w, src_h));
      }
      break;
    }
    case MotionStyle::kFollow: {
      if (amp.zoom_to < 1.0) throw Error(ErrorCode::kAmplitudeTooLarge, "follow scale below 1");
      if (static_cast<int>(follow_path.size()) != n_frames) {
        throw Error(ErrorCode::kLengthMismatch, "follow needs one centroid per frame");
      }
      std::vector<Centroid> path(n_frames, Centroid{src_w / 2.0 - 0.5, src_h / 2.0 - 0.5});
      Centroid last = path[0];
      for (int t = 0; t < n_frames; ++t) {
        if (follow_path[t]) last = *follow_path[t];
        path[t] = last;
      }
      const double scale = amp.zoom_to;
      const double max_x = (src_w - src_w / scale) / 2.0;
      const double max_y = (src_h - src_h / scale) / 2.0;
      constexpr int kHalf = 2;  // centred moving average over 5 frames
      for (int t = 0; t < n_frames; ++t) {
        double sx = 0.0, sy = 0.0;
        int cnt = 0;
        for (int d = -kHalf; d <= kHalf; ++d) {
          const int i = std::clamp(t + d, 0, n_frames - 1);
          sx += path[i].x;
          sy += path[i].y;
          ++cnt;
        }
        const double tx = std::clamp(sx / cnt + 0.5 - src_w / 2.0, -max_x, max_x);
        const double ty = std::clamp(sy / cnt + 0.5 - src_h / 2.0, -max_y, max_y);
        track.frames.push_back(make_transform(scale, tx, ty, src_w, src_h));
      }
      break;
    }
  }
  for (const FrameTransform& f : track.frames) {
    if (!inside(f.window, src_w, src_h)) {
      throw Error(ErrorCode::kAmplitudeTooLarge, "crop window leaves the source frame");
    }
  }
  return track;
}

std::vector<std::optional<Centroid>> mask_centroids(std::span<const BinaryMask> masks) {
  std::vector<std::optional<Centroid>> out;
  out.reserve(masks.size());
  for (const BinaryMask& m : masks) {
    if (m.any()) {
      out.emplace_back(mask_centroid(m));
    } else {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

RgbImage warp_frame(const RgbImage& frame, const FrameTransform& xf, int out_w, int out_h) {
  return to_rgb(resample_window_bilinear(to_planar(frame), xf.window.x0, xf.window.y0, xf.window.w,
                                         xf.window.h, out_w, out_h));
}

BinaryMask warp_mask(const BinaryMask& mask, const FrameTransform& xf, int out_w, int out_h) {
  return resample_mask_window(mask, xf.window.x0, xf.window.y0, xf.window.w, xf.window.h, out_w, out_h);
}

AugmentedSample apply_kenburns(const PairedSample& sample, const KenBurnsTrack& track, int out_w,
                               int out_h) {
  validate(sample);
  if (track.frames.size() != sample.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("track has {} frames, sample {}", track.frames.size(), sample.size()));
  }
  if (sample.size() > 0 &&
      (sample.input[0].width != track.src_w || sample.input[0].height != track.src_h)) {
    throw Error(ErrorCode::kShapeMismatch, "track was built for different source dims");
  }
  if (out_w < 1 || out_h < 1) throw Error(ErrorCode::kInvalidArgument, "output dims must be >= 1");
  AugmentedSample out;
  out.sample.id = sample.id;
  for (std::size_t t = 0; t < sample.size(); ++t) {
    const FrameTransform& xf = track.frames[t];
    out.sample.input.push_back(warp_frame(sample.input[t], xf, out_w, out_h));
    out.applied[0].push_back(xf);
    out.sample.gt.push_back(warp_frame(sample.gt[t], xf, out_w, out_h));
    out.applied[1].push_back(xf);
    out.sample.gt_masks.push_back(warp_mask(sample.gt_masks[t], xf, out_w, out_h));
    out.applied[2].push_back(xf);
  }
  return out;
}

nlohmann::json track_json(const KenBurnsTrack& track) {
  nlohmann::json frames = nlohmann::json::array();
  for (const FrameTransform& f : track.frames) {
    frames.push_back({{"scale", f.scale},
                      {"translate_x", f.translate_x},
                      {"translate_y", f.translate_y},
                      {"window", {f.window.x0, f.window.y0, f.window.w, f.window.h}}});
  }
  return {{"style", std::string(motion_style_name(track.style))},
          {"seed", track.seed},
          {"src_w", track.src_w},
          {"src_h", track.src_h},
          {"frames", std::move(frames)}};
}

}  // namespace rc
