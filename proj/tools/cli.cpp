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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "rc/bench_qc.hpp"
#include "rc/corruption.hpp"
#include "rc/diagnostics.hpp"
#include "rc/error.hpp"
#include "rc/features.hpp"
#include "rc/image_io.hpp"
#include "rc/parallel.hpp"
#include "rc/rc_core.hpp"
#include "rc/report.hpp"
#include "rc/stats.hpp"

namespace rc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  std::string backend = "toy";
  CLI::Option* backend_opt = nullptr;
  std::string model;
  std::string feature_dir;
  int input_resize = 448;
  int patch_stride = 14;
  int jobs = default_jobs();
  std::uint64_t seed = 0;
  double window_frac = 0.25;
  double stride_frac = 0.125;
  double sigma = 10.0;
  double tau = 3.0;
  bool l2_normalize = false;

  BackendOptions backend_spec() const {
    BackendOptions options;
    // --model alone selects the neural backend.
    if (!model.empty() && backend_opt != nullptr && backend_opt->count() == 0) {
      options.kind = BackendKind::kNeural;
    } else {
      options.kind = parse_backend_kind(backend);
    }
    options.input_resize = input_resize;
    options.patch_stride = patch_stride;
    options.feature_dir = feature_dir;
    options.model_path = model;
    return options;
  }

  RcConfig rc_config() const {
    RcConfig cfg;
    cfg.window_fraction = window_frac;
    cfg.stride_fraction = stride_frac;
    cfg.kernel.sigma = sigma;
    cfg.tau = tau;
    cfg.l2_normalize = l2_normalize;
    cfg.jobs = std::max(1, jobs);
    return cfg;
  }

  json settings() const {
    const BackendOptions options = backend_spec();
    return {{"backend", std::string(backend_kind_name(options.kind))},
            {"input_resize", input_resize},
            {"patch_stride", patch_stride},
            {"window_fraction", real6(window_frac)},
            {"stride_fraction", real6(stride_frac)},
            {"sigma", real6(sigma)},
            {"tau", real6(tau)},
            {"l2_normalize", l2_normalize},
            {"seed", seed}};
  }
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySet:
    case ErrorCode::kEmptyMask:
    case ErrorCode::kWindowTooLarge:
    case ErrorCode::kDegenerateCrop:
    case ErrorCode::kFeatureUnavailable:
      return kExitScoring;
    default:
      return kExitInput;
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", path));
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("write failed: {}", path));
}

// Sidecar for CSV outputs, which cannot carry the effective settings inline.
void write_settings_sidecar(const std::string& path, const Globals& g, json extra = json::object()) {
  if (path.empty() || path == "-") return;
  json j = g.settings();
  for (auto& [k, v] : extra.items()) j[k] = v;
  write_text(path + ".meta.json", dump_report(j));
}

std::string fmt_real(double v) { return std::isfinite(v) ? fmt::format("{:.6g}", v) : std::string(); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open {}", path));
  return in;
}

// ---------------------------------------------------------------------------

struct VideoScore {
  std::vector<FrameSpatial> frames;
  std::optional<TemporalScore> temporal;
};

void require_aligned_names(const fs::path& frames_dir, const fs::path& masks_dir) {
  const auto frames = list_frames(frames_dir);
  const auto masks = list_frames(masks_dir);
  if (frames.size() != masks.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("{} frames but {} masks", frames.size(), masks.size()));
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].stem() != masks[i].stem()) {
      throw Error(ErrorCode::kShapeMismatch, fmt::format("frame '{}' has no mask (found '{}')",
                                                         frames[i].filename().string(),
                                                         masks[i].filename().string()));
    }
  }
}

VideoScore score_video(const fs::path& frames_dir, const fs::path& masks_dir, const FeatureBackend& backend,
                       const RcConfig& cfg) {
  require_aligned_names(frames_dir, masks_dir);
  const std::vector<RgbImage> frames = read_frames(frames_dir);
  const std::vector<BinaryMask> masks = read_masks(masks_dir);
  if (frames.empty()) throw Error(ErrorCode::kEmptyInput, fmt::format("no frames in {}", frames_dir.string()));

  VideoScore out;
  out.frames.resize(frames.size());
  RcConfig inner = cfg;
  inner.jobs = 1;
  parallel_for(frames.size(), cfg.jobs, [&](std::size_t i) {
    try {
      out.frames[i].score = rc_s(frames[i], masks[i], backend, inner);
    } catch (const Error& e) {
      if (exit_code_for(e.code()) != kExitScoring) throw;
      out.frames[i].error = std::string(error_code_name(e.code()));
    }
  });
  if (frames.size() >= 2) out.temporal = rc_t(frames, masks, backend, cfg);
  return out;
}

int cmd_score_image(const Globals& g, const std::string& image_path, const std::string& mask_path,
                    const std::string& out_path) {
  const RgbImage image = read_image(image_path);
  const BinaryMask mask = read_mask(mask_path);
  const BackendOptions options = g.backend_spec();
  const auto backend = make_backend(options);
  const RcConfig cfg = g.rc_config();
  const SpatialScore s = rc_s(image, mask, *backend, cfg);
  write_text(out_path, dump_report(image_report(s, cfg, options)));
  return kExitOk;
}

int cmd_score_video(const Globals& g, const std::string& frames_dir, const std::string& masks_dir,
                    const std::string& out_path) {
  const BackendOptions options = g.backend_spec();
  const auto backend = make_backend(options);
  const RcConfig cfg = g.rc_config();
  const VideoScore v = score_video(frames_dir, masks_dir, *backend, cfg);
  write_text(out_path, dump_report(video_report(v.frames, v.temporal, cfg, options)));
  const bool any_scored = std::any_of(v.frames.begin(), v.frames.end(), [](const FrameSpatial& f) {
    return f.score.has_value();
  });
  return any_scored ? kExitOk : kExitScoring;
}

struct BatchRow {
  std::string item;
  std::string method;
  fs::path result;
  fs::path mask;
  std::optional<double> rc_s;
  std::optional<double> rc_t;
  std::string error;
};

int cmd_batch(const Globals& g, const std::string& manifest_path, const std::string& out_path) {
  std::ifstream in = open_input(manifest_path);
  const fs::path base = fs::path(manifest_path).parent_path();
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, "empty manifest");
  const auto header = split_csv(line);
  auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::kFormatError, fmt::format("manifest lacks column '{}'", name));
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ci = col("item"), cm = col("method"), cr = col("result"), ck = col("mask");
  std::vector<BatchRow> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv(line);
    if (f.size() <= std::max({ci, cm, cr, ck})) throw Error(ErrorCode::kFormatError, "short manifest row");
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
    rows.push_back({f[ci], f[cm], resolve(f[cr]), resolve(f[ck]), {}, {}, {}});
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "manifest lists no entries");

  const BackendOptions options = g.backend_spec();
  const auto backend = make_backend(options);
  RcConfig cfg = g.rc_config();
  cfg.jobs = 1;
  parallel_for(rows.size(), g.jobs, [&](std::size_t i) {
    BatchRow& r = rows[i];
    try {
      if (fs::is_directory(r.result)) {
        const VideoScore v = score_video(r.result, r.mask, *backend, cfg);
        double sum = 0.0;
        std::size_t n = 0;
        for (const FrameSpatial& f : v.frames) {
          if (f.score) {
            sum += f.score->rc_s_raw;
            ++n;
          }
        }
        if (n > 0) r.rc_s = normalize_rcs(sum / static_cast<double>(n), cfg.tau);
        if (v.temporal && v.temporal->rc_t) r.rc_t = *v.temporal->rc_t;
        if (n == 0) r.error = "EmptyMask";
      } else {
        r.rc_s = rc_s(read_image(r.result), read_mask(r.mask), *backend, cfg).rc_s_normalized;
      }
    } catch (const Error& e) {
      r.error = std::string(error_code_name(e.code()));
    } catch (const std::exception& e) {
      r.error = "IoError";
    }
  });

  std::string csv = "item,method,rc_s,rc_t,error\n";
  for (const BatchRow& r : rows) {
    csv += fmt::format("{},{},{},{},{}\n", r.item, r.method, r.rc_s ? fmt_real(*r.rc_s) : "",
                       r.rc_t ? fmt_real(*r.rc_t) : "", r.error);
  }
  write_text(out_path, csv);
  write_settings_sidecar(out_path, g);
  return kExitOk;
}

int cmd_corrupt(const Globals& g, const std::string& kind_name, const std::vector<int>& levels,
                const std::string& in_dir, const std::string& out_dir, int min_distance, double blur_sigma) {
  const CorruptionKind kind = parse_corruption_kind(kind_name);
  const fs::path in(in_dir);
  require_aligned_names(in / "frames", in / "masks");
  const std::vector<RgbImage> frames = read_frames(in / "frames");
  const std::vector<BinaryMask> masks = read_masks(in / "masks");
  if (frames.empty()) throw Error(ErrorCode::kEmptyInput, "no input frames");
  const int n = static_cast<int>(frames.size());
  const CorruptionPlan plan = plan_corruption(kind, g.seed, n, levels);
  const int dist = min_distance > 0 ? min_distance : default_min_distance(n);

  json plan_doc = plan_json(plan);
  plan_doc["settings"] = g.settings();
  const fs::path out(out_dir);
  for (std::size_t li = 0; li < plan.levels.size(); ++li) {
    const int level = plan.levels[li];
    Clip clip;
    switch (kind) {
      case CorruptionKind::kDrop:
        clip = apply_drop(frames, masks, plan, level);
        break;
      case CorruptionKind::kReplace: {
        clip = apply_replace(frames, masks, plan, level, dist);
        json donors = json::array();
        for (const auto& [t, d] : replace_donors(plan, level, dist)) donors.push_back({t, d});
        plan_doc["levels"][li]["donors"] = std::move(donors);
        break;
      }
      case CorruptionKind::kMaskBlur:
        clip = {apply_mask_blur(frames, masks, plan, level, blur_sigma), masks};
        break;
    }
    const fs::path dir = out / fmt::format("level_{}", level);
    write_frames(clip.frames, dir / "frames");
    write_masks(clip.masks, dir / "masks");
  }
  if (kind == CorruptionKind::kReplace) plan_doc["min_distance"] = dist;
  if (kind == CorruptionKind::kMaskBlur) plan_doc["blur_sigma"] = real6(blur_sigma);
  write_text((out / "plan.json").string(), dump_report(plan_doc));
  return kExitOk;
}

int cmd_sweep_blur(const Globals& g, const std::string& image_path, const std::string& mask_path,
                   const std::vector<double>& sigmas, const std::string& out_path) {
  const RgbImage image = read_image(image_path);
  const BinaryMask mask = read_mask(mask_path);
  const BackendOptions options = g.backend_spec();
  const auto backend = make_backend(options);
  const RcConfig cfg = g.rc_config();
  BlurSweep sweep;
  sweep.sigmas = sigmas;
  const auto curve = blur_sweep_rcs(image, mask, *backend, cfg, sweep);
  json points = json::array();
  for (const SweepPoint& p : curve) {
    points.push_back({{"sigma", real6(p.sigma)},
                      {"rc_s_raw", real6(p.rc_s_raw)},
                      {"rc_s_normalized", real6(p.rc_s_normalized)}});
  }
  const ResolvedWindow w = resolve_window(cfg, options.input_resize / options.patch_stride,
                                          options.input_resize / options.patch_stride);
  write_text(out_path, dump_report({{"curve", std::move(points)},
                                    {"config", config_json(cfg, options, w.window, w.stride)}}));
  return kExitOk;
}

int cmd_qc(const Globals& g, const std::string& root, double keep, std::size_t area_threshold,
           double diff_threshold, const std::string& report_path) {
  std::vector<fs::path> dirs;
  if (!fs::is_directory(root)) throw Error(ErrorCode::kIoError, fmt::format("not a directory: {}", root));
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::is_directory(entry.path() / "input")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw Error(ErrorCode::kEmptyInput, fmt::format("no samples under {}", root));
  std::vector<PairedSample> samples;
  samples.reserve(dirs.size());
  for (const fs::path& d : dirs) samples.push_back(load_paired_sample(d));
  QcConfig cfg;
  cfg.keep_fraction = keep;
  cfg.area_threshold = area_threshold;
  cfg.diff_threshold = diff_threshold;
  cfg.jobs = std::max(1, g.jobs);
  write_text(report_path, dump_report(run_qc(samples, cfg)));
  return kExitOk;
}

struct AugmentArgs {
  std::string in_dir;
  std::string out_dir;
  std::string style = "shake";
  int frames = 81;
  int width = 0;
  int height = 0;
  double translate = -1.0;
  double zoom_from = 1.0;
  double zoom_to = std::numeric_limits<double>::quiet_NaN();
  int knot_spacing = 12;
};

int cmd_augment(const Globals& g, const AugmentArgs& a) {
  PairedSample sample = load_paired_sample(a.in_dir);
  if (a.frames < 1) throw Error(ErrorCode::kInvalidArgument, "--frames must be >= 1");
  if (sample.size() < static_cast<std::size_t>(a.frames)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("sample has {} frames, {} requested", sample.size(), a.frames));
  }
  sample.input.resize(a.frames);
  sample.gt.resize(a.frames);
  sample.gt_masks.resize(a.frames);
  const int w = sample.input[0].width;
  const int h = sample.input[0].height;

  const MotionStyle style = parse_motion_style(a.style);
  MotionAmplitude amp;
  amp.translate = a.translate >= 0.0 ? a.translate : 0.03 * std::min(w, h);
  amp.zoom_from = a.zoom_from;
  amp.zoom_to = std::isnan(a.zoom_to) ? 1.2 : a.zoom_to;
  amp.knot_spacing = a.knot_spacing;
  const auto centroids = mask_centroids(sample.gt_masks);
  const KenBurnsTrack track = make_kenburns_track(style, g.seed, a.frames, w, h, amp, centroids);
  AugmentedSample aug = apply_kenburns(sample, track, a.width > 0 ? a.width : w, a.height > 0 ? a.height : h);
  aug.sample.id = fs::path(a.out_dir).filename().string();
  save_paired_sample(aug.sample, a.out_dir);
  json doc = track_json(track);
  doc["settings"] = g.settings();
  write_text((fs::path(a.out_dir) / "track.json").string(), dump_report(doc));
  return kExitOk;
}

int cmd_correlate(const std::string& scores_path, const std::string& rankings_path, const std::string& column,
                  bool lower_is_better, const std::string& out_path) {
  std::ifstream scores = open_input(scores_path);
  std::ifstream rankings = open_input(rankings_path);
  const MetricScores metric = read_metric_csv(scores, column);
  const RankingTable human = read_rankings_csv(rankings);
  const CorrelationReport report = correlate(metric, !lower_is_better, human);
  json j = to_json(report);
  j["config"] = {{"score_column", column}, {"higher_is_better", !lower_is_better}};
  write_text(out_path, dump_report(j));
  return kExitOk;
}

int cmd_spectra(const Globals& g, const std::string& a_dir, const std::string& b_dir, const std::string& out_path) {
  const SpectrumMap d = spectral_diff(read_frames(a_dir), read_frames(b_dir), std::max(1, g.jobs));
  write_text(out_path, matrix_csv(d.values, d.height, d.width));
  write_settings_sidecar(out_path, g, {{"pairs", d.frames}, {"width", d.width}, {"height", d.height}});
  return kExitOk;
}

int cmd_fourier_sens(const Globals& g, const std::string& frames_dir, int grid, double eps,
                     const std::string& out_path) {
  const BackendOptions options = g.backend_spec();
  const auto backend = make_backend(options);
  const std::vector<RgbImage> frames = read_frames(frames_dir);
  const SensitivityGrid s = fourier_sensitivity(*backend, frames, grid, eps, std::max(1, g.jobs));
  write_text(out_path, matrix_csv(s.values, s.grid, s.grid));
  write_settings_sidecar(out_path, g, {{"grid", s.grid}, {"epsilon", real6(s.epsilon)}, {"frames", frames.size()}});
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Removal coherence metrics: scoring, corruption, QC, augmentation, statistics"};
  app.set_config("--config", "", "INI/TOML file with option defaults; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.backend_opt = app.add_option("--backend", g.backend, "Feature backend")
                      ->check(CLI::IsMember({"file", "toy", "neural"}));
  app.add_option("--model", g.model, "ONNX model for the neural backend (else RC_MODEL_PATH)");
  app.add_option("--feature-dir", g.feature_dir, "Directory of .rcft files for the file backend");
  app.add_option("--input-resize", g.input_resize, "Square side crops are resized to")->check(CLI::PositiveNumber);
  app.add_option("--patch-stride", g.patch_stride, "Patch size of the feature grid")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--window-frac", g.window_frac, "Window side as a fraction of the feature grid")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--stride-frac", g.stride_frac, "Window stride as a fraction of the feature grid")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--sigma", g.sigma, "RBF kernel bandwidth")->check(CLI::PositiveNumber);
  app.add_option("--tau", g.tau, "Normalisation temperature")->check(CLI::PositiveNumber);
  app.add_flag("--l2-normalize", g.l2_normalize, "L2-normalise feature vectors before MMD");

  std::function<int()> action;

  std::string image, mask, out;
  auto* score_image = app.add_subcommand("score-image", "Score one inpainted image");
  score_image->add_option("--image", image)->required();
  score_image->add_option("--mask", mask)->required();
  score_image->add_option("--out", out, "Report path (stdout when omitted)");
  score_image->callback([&] { action = [&] { return cmd_score_image(g, image, mask, out); }; });

  std::string frames_dir, masks_dir;
  auto* score_video = app.add_subcommand("score-video", "Score a frame sequence");
  score_video->add_option("--frames", frames_dir)->required();
  score_video->add_option("--masks", masks_dir)->required();
  score_video->add_option("--out", out);
  score_video->callback([&] { action = [&] { return cmd_score_video(g, frames_dir, masks_dir, out); }; });

  std::string manifest;
  auto* batch = app.add_subcommand("batch", "Score every manifest entry into a CSV");
  batch->add_option("--manifest", manifest, "CSV: item,method,result,mask")->required();
  batch->add_option("--out", out);
  batch->callback([&] { action = [&] { return cmd_batch(g, manifest, out); }; });

  std::string kind = "drop", in_dir, out_dir;
  std::vector<int> levels{2, 4, 8, 16};
  int min_distance = 0;
  double blur_sigma = 3.0;
  auto* corrupt = app.add_subcommand("corrupt", "Write corrupted copies of <in>/{frames,masks}");
  corrupt->add_option("--kind", kind)->check(CLI::IsMember({"drop", "replace", "mask-blur"}));
  corrupt->add_option("--levels", levels)->delimiter(',');
  corrupt->add_option("--in", in_dir)->required();
  corrupt->add_option("--out", out_dir)->required();
  corrupt->add_option("--min-distance", min_distance, "Replace donor distance (default T/4)");
  corrupt->add_option("--blur-sigma", blur_sigma)->check(CLI::PositiveNumber);
  corrupt->callback([&] {
    action = [&] { return cmd_corrupt(g, kind, levels, in_dir, out_dir, min_distance, blur_sigma); };
  });

  std::vector<double> sigmas{0.0, 0.5, 1.0, 2.0, 3.0};
  auto* sweep = app.add_subcommand("sweep-blur", "RC-S response to in-mask Gaussian blur");
  sweep->add_option("--image", image)->required();
  sweep->add_option("--mask", mask)->required();
  sweep->add_option("--sigmas", sigmas)->delimiter(',');
  sweep->add_option("--out", out);
  sweep->callback([&] { action = [&] { return cmd_sweep_blur(g, image, mask, sigmas, out); }; });

  std::string root, report = "qc_report.json";
  double keep = 0.4, diff_threshold = kDefaultDiffThreshold;
  std::size_t area_threshold = kDefaultAreaThreshold;
  auto* qc = app.add_subcommand("qc", "Two-stage quality control of paired samples");
  qc->add_option("--root", root)->required();
  qc->add_option("--keep", keep)->check(CLI::Range(0.0, 1.0));
  qc->add_option("--area-threshold", area_threshold);
  qc->add_option("--diff-threshold", diff_threshold)->check(CLI::NonNegativeNumber);
  qc->add_option("--report", report);
  qc->callback([&] {
    action = [&] { return cmd_qc(g, root, keep, area_threshold, diff_threshold, report); };
  });

  AugmentArgs aug;
  auto* augment = app.add_subcommand("augment", "Ken Burns motion applied to input, gt and mask");
  augment->add_option("--in", aug.in_dir, "Sample directory with input/, gt/, mask/")->required();
  augment->add_option("--out", aug.out_dir)->required();
  augment->add_option("--style", aug.style)->check(CLI::IsMember({"shake", "zoom", "follow"}));
  augment->add_option("--frames", aug.frames);
  augment->add_option("--width", aug.width, "Output width (default: source)");
  augment->add_option("--height", aug.height, "Output height (default: source)");
  augment->add_option("--translate", aug.translate, "Shake amplitude in pixels (default 3% of the short side)");
  augment->add_option("--zoom-from", aug.zoom_from);
  augment->add_option("--zoom-to", aug.zoom_to, "Final zoom; constant scale for follow (default 1.2)");
  augment->add_option("--knot-spacing", aug.knot_spacing)->check(CLI::PositiveNumber);
  augment->callback([&] { action = [&] { return cmd_augment(g, aug); }; });

  std::string scores, rankings, column = "score";
  bool lower_is_better = false;
  auto* corr = app.add_subcommand("correlate", "Rank agreement between metric scores and raters");
  corr->add_option("--scores", scores, "CSV: item,method,<column>")->required();
  corr->add_option("--rankings", rankings, "CSV: item,rater,method,rank")->required();
  corr->add_option("--column", column, "Score column to read");
  corr->add_flag("--lower-is-better", lower_is_better);
  corr->add_option("--out", out);
  corr->callback([&] {
    action = [&] { return cmd_correlate(scores, rankings, column, lower_is_better, out); };
  });

  std::string a_dir, b_dir;
  auto* spectra = app.add_subcommand("spectra", "Mean log-magnitude spectrum difference of paired frames");
  spectra->add_option("--a", a_dir)->required();
  spectra->add_option("--b", b_dir)->required();
  spectra->add_option("--out", out);
  spectra->callback([&] { action = [&] { return cmd_spectra(g, a_dir, b_dir, out); }; });

  int grid = 31;
  double eps = 4.0;
  auto* fsens = app.add_subcommand("fourier-sens", "Backend sensitivity to Fourier-basis perturbations");
  fsens->add_option("--frames", frames_dir)->required();
  fsens->add_option("--grid", grid)->check(CLI::PositiveNumber);
  fsens->add_option("--eps", eps)->check(CLI::NonNegativeNumber);
  fsens->add_option("--out", out);
  fsens->callback([&] { action = [&] { return cmd_fourier_sens(g, frames_dir, grid, eps, out); }; });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action ? action() : kExitInput;
  } catch (const Error& e) {
    std::cerr << "rc: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "rc: IoError: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "rc: " << e.what() << "\n";
    return kExitScoring;
  }
}

}  // namespace rc::cli
