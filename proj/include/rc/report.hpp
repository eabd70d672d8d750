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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rc/features.hpp"
#include "rc/rc_core.hpp"

namespace rc {

// Value rounded to 6 significant digits; non-finite values become null.
nlohmann::json real6(double v);

nlohmann::json config_json(const RcConfig& cfg, const BackendOptions& backend, int window_size,
                           int stride);

nlohmann::json target_json(const TargetScore& t);
nlohmann::json pair_json(const PairScore& p);

// Score of one frame in a video; `error` is set when scoring failed.
struct FrameSpatial {
  std::optional<SpatialScore> score;
  std::string error;
};

nlohmann::json image_report(const SpatialScore& s, const RcConfig& cfg, const BackendOptions& backend);

// rc_s_* fields hold the mean raw RC-S over scored frames and its normalisation;
// rc_t is null when the sequence is shorter than two frames or had no shared region.
nlohmann::json video_report(const std::vector<FrameSpatial>& frames,
                            const std::optional<TemporalScore>& temporal, const RcConfig& cfg,
                            const BackendOptions& backend);

std::string dump_report(const nlohmann::json& j);

}  // namespace rc
