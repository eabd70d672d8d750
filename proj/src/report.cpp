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

#include "rc/report.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace rc {

nlohmann::json real6(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(fmt::format("{:.6g}", v).c_str(), nullptr);
}

nlohmann::json config_json(const RcConfig& cfg, const BackendOptions& backend, int window_size,
                           int stride) {
  return {
      {"window_size", window_size},
      {"stride", stride},
      {"window_fraction", real6(cfg.window_fraction)},
      {"stride_fraction", real6(cfg.stride_fraction)},
      {"sigma", real6(cfg.kernel.sigma)},
      {"tau", real6(cfg.tau)},
      {"l2_normalize", cfg.l2_normalize},
      {"backend", std::string(backend_kind_name(backend.kind))},
      {"input_resize", backend.input_resize},
      {"patch_stride", backend.patch_stride},
  };
}

namespace {

nlohmann::json windows_json(const std::vector<WindowScore>& windows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const WindowScore& w : windows) {
    arr.push_back({{"y", w.origin.y},
                   {"x", w.origin.x},
                   {"d", real6(w.discrepancy)},
                   {"cells", w.masked_cells},
                   {"crop_background", w.crop_background}});
  }
  return arr;
}

nlohmann::json box_json(const BoundingBox& b) { return {b.x0, b.y0, b.x1, b.y1}; }

}  // namespace

nlohmann::json target_json(const TargetScore& t) {
  return {{"component_id", t.component_id},
          {"box", box_json(t.crop_box)},
          {"mean", real6(t.mean)},
          {"windows", windows_json(t.windows)}};
}

nlohmann::json pair_json(const PairScore& p) {
  nlohmann::json j = {{"t", p.t}, {"valid", p.valid}};
  if (p.valid) {
    j["box"] = box_json(p.crop_box);
    j["mean"] = real6(p.mean);
    j["windows"] = windows_json(p.windows);
  } else {
    j["mean"] = nullptr;
  }
  return j;
}

nlohmann::json image_report(const SpatialScore& s, const RcConfig& cfg, const BackendOptions& backend) {
  nlohmann::json targets = nlohmann::json::array();
  for (const TargetScore& t : s.per_target) targets.push_back(target_json(t));
  return {{"rc_s_raw", real6(s.rc_s_raw)},
          {"rc_s_normalized", real6(s.rc_s_normalized)},
          {"rc_t", nullptr},
          {"per_target", std::move(targets)},
          {"per_pair", nlohmann::json::array()},
          {"config", config_json(cfg, backend, s.window_size, s.stride)}};
}

nlohmann::json video_report(const std::vector<FrameSpatial>& frames,
                            const std::optional<TemporalScore>& temporal, const RcConfig& cfg,
                            const BackendOptions& backend) {
  nlohmann::json per_frame = nlohmann::json::array();
  double sum = 0.0;
  std::size_t scored = 0;
  int window = 0, stride = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const FrameSpatial& f = frames[i];
    nlohmann::json j = {{"frame", i}};
    if (f.score) {
      sum += f.score->rc_s_raw;
      ++scored;
      if (window == 0) {
        window = f.score->window_size;
        stride = f.score->stride;
      }
      j["rc_s_raw"] = real6(f.score->rc_s_raw);
      j["rc_s_normalized"] = real6(f.score->rc_s_normalized);
      nlohmann::json targets = nlohmann::json::array();
      for (const TargetScore& t : f.score->per_target) targets.push_back(target_json(t));
      j["per_target"] = std::move(targets);
    } else {
      j["rc_s_raw"] = nullptr;
      j["rc_s_normalized"] = nullptr;
      j["error"] = f.error;
    }
    per_frame.push_back(std::move(j));
  }

  nlohmann::json report;
  if (scored > 0) {
    const double mean = sum / static_cast<double>(scored);
    report["rc_s_raw"] = real6(mean);
    report["rc_s_normalized"] = real6(normalize_rcs(mean, cfg.tau));
  } else {
    report["rc_s_raw"] = nullptr;
    report["rc_s_normalized"] = nullptr;
  }
  nlohmann::json pairs = nlohmann::json::array();
  if (temporal) {
    report["rc_t"] = temporal->rc_t ? real6(*temporal->rc_t) : nlohmann::json(nullptr);
    report["valid_pairs"] = temporal->valid_pairs;
    for (const PairScore& p : temporal->per_pair) pairs.push_back(pair_json(p));
    if (window == 0) {
      window = temporal->window_size;
      stride = temporal->stride;
    }
  } else {
    report["rc_t"] = nullptr;
  }
  report["frames"] = frames.size();
  report["per_target"] = nlohmann::json::array();
  report["per_frame"] = std::move(per_frame);
  report["per_pair"] = std::move(pairs);
  report["config"] = config_json(cfg, backend, window, stride);
  return report;
}

std::string dump_report(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace rc
