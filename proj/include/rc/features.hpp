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
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rc/image.hpp"

namespace rc {

// C x H' x W' feature tensor, channel-major then row-major.
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> values;

  FeatureMap() = default;
  FeatureMap(int c, int h, int w, float fill = 0.0f)
      : channels(c), height(h), width(w), values(static_cast<std::size_t>(c) * h * w, fill) {}

  std::size_t cells() const { return static_cast<std::size_t>(height) * width; }
  float& at(int c, int y, int x) {
    return values[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float at(int c, int y, int x) const {
    return values[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;
};

// Throws FormatError if dims are zero, sizes disagree or a value is not finite.
void validate(const FeatureMap& fm);

enum class BackendKind { kFile, kToy, kNeural };

std::string_view backend_kind_name(BackendKind kind);
BackendKind parse_backend_kind(std::string_view name);

struct BackendOptions {
  BackendKind kind = BackendKind::kToy;
  int input_resize = 448;  // crops are resized to this square side
  int patch_stride = 14;   // H' = W' = input_resize / patch_stride
  std::filesystem::path feature_dir;  // file backend
  std::filesystem::path model_path;   // neural backend; falls back to RC_MODEL_PATH
};

class FeatureBackend {
 public:
  virtual ~FeatureBackend() = default;

  // Deterministic; safe to call concurrently.
  virtual FeatureMap extract(const PlanarImage& crop) const = 0;

  const BackendOptions& options() const { return options_; }

 protected:
  explicit FeatureBackend(BackendOptions options) : options_(std::move(options)) {}

 private:
  BackendOptions options_;
};

// Ten local statistics per patch_stride x patch_stride patch of the resized
// crop: RGB mean (3), RGB population std-dev (3), luma mean |dx| and |dy| (2),
// luma RMS dx and dy (2). Differences stay inside the patch.
class ToyBackend final : public FeatureBackend {
 public:
  static constexpr int kChannels = 10;
  explicit ToyBackend(BackendOptions options);
  FeatureMap extract(const PlanarImage& crop) const override;
};

// Looks up <feature_dir>/<feature_key(crop)>.rcft.
class FileBackend final : public FeatureBackend {
 public:
  explicit FileBackend(BackendOptions options);
  FeatureMap extract(const PlanarImage& crop) const override;
  std::filesystem::path path_for(const PlanarImage& crop) const;
};

// Patch-token features from an ONNX model: input 1x3xSxS RGB in [0, 1], output
// 1xCxH'xW' (or 1xTxC tokens, a leading global token is dropped).
class NeuralBackend final : public FeatureBackend {
 public:
  explicit NeuralBackend(BackendOptions options);
  ~NeuralBackend() override;
  FeatureMap extract(const PlanarImage& crop) const override;

  static bool available();  // built with an ONNX-capable runtime

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::unique_ptr<FeatureBackend> make_backend(const BackendOptions& options);

FeatureMap extract_features(const FeatureBackend& backend, const RgbImage& crop);

// FNV-1a 64 over (channels, width, height, float bytes), 16 hex digits.
std::string feature_key(const PlanarImage& crop);

// Little-endian: "RCFT", u32 version = 1, u32 C, u32 H', u32 W', f32 values.
inline constexpr std::uint32_t kFeatureFileVersion = 1;
inline constexpr std::size_t kFeatureHeaderBytes = 20;

std::vector<std::uint8_t> encode_feature_map(const FeatureMap& fm);
FeatureMap decode_feature_map(const std::vector<std::uint8_t>& bytes);
void write_feature_file(const FeatureMap& fm, const std::filesystem::path& path);
FeatureMap read_feature_file(const std::filesystem::path& path);

}  // namespace rc
