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

#include "rc/features.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <mutex>

#include <fmt/format.h>

#include "rc/error.hpp"
#include "rc/resample.hpp"
#include "rc/simd/kernels.hpp"

#if RC_HAVE_OPENCV_DNN
#include <opencv2/core.hpp>
#include <opencv2/dnn.hpp>
#endif

namespace rc {

void validate(const FeatureMap& fm) {
  if (fm.channels < 1 || fm.height < 1 || fm.width < 1) {
    throw Error(ErrorCode::kFormatError, "feature map dims must be >= 1");
  }
  if (fm.values.size() != static_cast<std::size_t>(fm.channels) * fm.height * fm.width) {
    throw Error(ErrorCode::kFormatError, "feature map value count does not match dims");
  }
  for (float v : fm.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kFormatError, "non-finite feature value");
  }
}

std::string_view backend_kind_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kFile: return "file";
    case BackendKind::kToy: return "toy";
    case BackendKind::kNeural: return "neural";
  }
  return "unknown";
}

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "file") return BackendKind::kFile;
  if (name == "toy") return BackendKind::kToy;
  if (name == "neural") return BackendKind::kNeural;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown backend '{}'", name));
}

// ---------------------------------------------------------------------------
// Toy backend

ToyBackend::ToyBackend(BackendOptions options) : FeatureBackend(std::move(options)) {
  if (this->options().input_resize < 1 || this->options().patch_stride < 1 ||
      this->options().patch_stride > this->options().input_resize) {
    throw Error(ErrorCode::kInvalidArgument, "toy backend: need 1 <= patch_stride <= input_resize");
  }
}

FeatureMap ToyBackend::extract(const PlanarImage& crop) const {
  if (crop.empty()) throw Error(ErrorCode::kEmptyInput, "toy backend: empty crop");
  if (crop.channels != 3) throw Error(ErrorCode::kShapeMismatch, "toy backend expects 3 channels");
  const int side = options().input_resize;
  const int stride = options().patch_stride;
  const PlanarImage img =
      (crop.width == side && crop.height == side) ? crop : resize_bilinear(crop, side, side);

  std::vector<float> luma(static_cast<std::size_t>(side) * side);
  for (std::size_t i = 0; i < luma.size(); ++i) {
    luma[i] = 0.299f * img.plane(0)[i] + 0.587f * img.plane(1)[i] + 0.114f * img.plane(2)[i];
  }

  const int cells = side / stride;
  const auto& k = simd::active_kernels();
  const double n_px = static_cast<double>(stride) * stride;
  const double n_dx = static_cast<double>(stride - 1) * stride;
  FeatureMap fm(kChannels, cells, cells);
  for (int py = 0; py < cells; ++py) {
    for (int px = 0; px < cells; ++px) {
      const int x0 = px * stride;
      const int y0 = py * stride;
      for (int c = 0; c < 3; ++c) {
        double s = 0.0, s2 = 0.0;
        for (int y = y0; y < y0 + stride; ++y) {
          k.sum_and_squares(img.plane(c) + static_cast<std::size_t>(y) * side + x0,
                            static_cast<std::size_t>(stride), &s, &s2);
        }
        const double mean = s / n_px;
        const double var = std::max(0.0, s2 / n_px - mean * mean);
        fm.at(c, py, px) = static_cast<float>(mean);
        fm.at(3 + c, py, px) = static_cast<float>(std::sqrt(var));
      }
      double abs_dx = 0.0, abs_dy = 0.0, sq_dx = 0.0, sq_dy = 0.0;
      for (int y = y0; y < y0 + stride; ++y) {
        const float* row = &luma[static_cast<std::size_t>(y) * side];
        for (int x = x0; x + 1 < x0 + stride; ++x) {
          const double d = static_cast<double>(row[x + 1]) - row[x];
          abs_dx += std::abs(d);
          sq_dx += d * d;
        }
        if (y + 1 < y0 + stride) {
          const float* next = row + side;
          for (int x = x0; x < x0 + stride; ++x) {
            const double d = static_cast<double>(next[x]) - row[x];
            abs_dy += std::abs(d);
            sq_dy += d * d;
          }
        }
      }
      if (stride > 1) {
        fm.at(6, py, px) = static_cast<float>(abs_dx / n_dx);
        fm.at(7, py, px) = static_cast<float>(abs_dy / n_dx);
        fm.at(8, py, px) = static_cast<float>(std::sqrt(sq_dx / n_dx));
        fm.at(9, py, px) = static_cast<float>(std::sqrt(sq_dy / n_dx));
      }
    }
  }
  return fm;
}

// ---------------------------------------------------------------------------
// File backend

std::string feature_key(const PlanarImage& crop) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  auto mix_u32 = [&mix](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) mix(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  mix_u32(static_cast<std::uint32_t>(crop.channels));
  mix_u32(static_cast<std::uint32_t>(crop.width));
  mix_u32(static_cast<std::uint32_t>(crop.height));
  for (float v : crop.data) mix_u32(std::bit_cast<std::uint32_t>(v));
  return fmt::format("{:016x}", h);
}

FileBackend::FileBackend(BackendOptions options) : FeatureBackend(std::move(options)) {}

std::filesystem::path FileBackend::path_for(const PlanarImage& crop) const {
  return options().feature_dir / (feature_key(crop) + ".rcft");
}

FeatureMap FileBackend::extract(const PlanarImage& crop) const {
  if (crop.empty()) throw Error(ErrorCode::kEmptyInput, "file backend: empty crop");
  const auto path = path_for(crop);
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kFeatureUnavailable, fmt::format("no feature file {}", path.string()));
  }
  return read_feature_file(path);
}

// ---------------------------------------------------------------------------
// Neural backend

#if RC_HAVE_OPENCV_DNN

struct NeuralBackend::Impl {
  std::mutex mu;  // cv::dnn::Net::forward is not reentrant
  cv::dnn::Net net;
};

bool NeuralBackend::available() { return true; }

NeuralBackend::NeuralBackend(BackendOptions options)
    : FeatureBackend(std::move(options)), impl_(std::make_unique<Impl>()) {
  std::filesystem::path path = this->options().model_path;
  if (path.empty()) {
    if (const char* env = std::getenv("RC_MODEL_PATH")) path = env;
  }
  if (path.empty() || !std::filesystem::exists(path)) {
    throw Error(ErrorCode::kModelLoadError,
                fmt::format("model file '{}' not found (set --model or RC_MODEL_PATH)", path.string()));
  }
  try {
    impl_->net = cv::dnn::readNetFromONNX(path.string());
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::kModelLoadError, e.what());
  }
  if (impl_->net.empty()) throw Error(ErrorCode::kModelLoadError, "empty network");
}

NeuralBackend::~NeuralBackend() = default;

FeatureMap NeuralBackend::extract(const PlanarImage& crop) const {
  if (crop.empty() || crop.channels != 3) {
    throw Error(ErrorCode::kShapeMismatch, "neural backend expects a non-empty 3-channel crop");
  }
  const int side = options().input_resize;
  const int grid = side / options().patch_stride;
  const PlanarImage img =
      (crop.width == side && crop.height == side) ? crop : resize_bilinear(crop, side, side);
  const int dims[4] = {1, 3, side, side};
  cv::Mat blob(4, dims, CV_32F);
  float* dst = blob.ptr<float>();
  for (std::size_t i = 0; i < img.data.size(); ++i) dst[i] = img.data[i] / 255.0f;

  cv::Mat out;
  {
    std::lock_guard lock(impl_->mu);
    try {
      impl_->net.setInput(blob);
      out = impl_->net.forward().clone();
    } catch (const cv::Exception& e) {
      throw Error(ErrorCode::kModelLoadError, e.what());
    }
  }
  const float* src = out.ptr<float>();
  FeatureMap fm;
  if (out.dims == 4) {
    fm = FeatureMap(out.size[1], out.size[2], out.size[3]);
    std::copy_n(src, fm.values.size(), fm.values.begin());
  } else if (out.dims == 3) {
    // Token layout 1 x T x C; keep the trailing grid*grid patch tokens.
    const int tokens = out.size[1];
    const int channels = out.size[2];
    const int skip = tokens - grid * grid;
    if (skip < 0) throw Error(ErrorCode::kModelLoadError, "model emits fewer tokens than patches");
    fm = FeatureMap(channels, grid, grid);
    for (int t = 0; t < grid * grid; ++t) {
      for (int c = 0; c < channels; ++c) {
        fm.values[static_cast<std::size_t>(c) * grid * grid + t] =
            src[static_cast<std::size_t>(skip + t) * channels + c];
      }
    }
  } else {
    throw Error(ErrorCode::kModelLoadError, "unsupported model output rank");
  }
  validate(fm);
  return fm;
}

#else

struct NeuralBackend::Impl {};

bool NeuralBackend::available() { return false; }

NeuralBackend::NeuralBackend(BackendOptions options) : FeatureBackend(std::move(options)) {
  throw Error(ErrorCode::kModelLoadError, "built without an ONNX runtime");
}

NeuralBackend::~NeuralBackend() = default;

FeatureMap NeuralBackend::extract(const PlanarImage&) const {
  throw Error(ErrorCode::kModelLoadError, "built without an ONNX runtime");
}

#endif

std::unique_ptr<FeatureBackend> make_backend(const BackendOptions& options) {
  switch (options.kind) {
    case BackendKind::kToy: return std::make_unique<ToyBackend>(options);
    case BackendKind::kFile: return std::make_unique<FileBackend>(options);
    case BackendKind::kNeural: return std::make_unique<NeuralBackend>(options);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown backend kind");
}

FeatureMap extract_features(const FeatureBackend& backend, const RgbImage& crop) {
  return backend.extract(to_planar(crop));
}

// ---------------------------------------------------------------------------
// Feature file format

namespace {

void put_u32(std::uint8_t* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

constexpr std::uint8_t kMagic[4] = {'R', 'C', 'F', 'T'};

}  // namespace

std::vector<std::uint8_t> encode_feature_map(const FeatureMap& fm) {
  validate(fm);
  std::vector<std::uint8_t> out(kFeatureHeaderBytes + fm.values.size() * 4);
  std::uint8_t* p = out.data();
  std::copy(std::begin(kMagic), std::end(kMagic), p);
  put_u32(p + 4, kFeatureFileVersion);
  put_u32(p + 8, static_cast<std::uint32_t>(fm.channels));
  put_u32(p + 12, static_cast<std::uint32_t>(fm.height));
  put_u32(p + 16, static_cast<std::uint32_t>(fm.width));
  p += kFeatureHeaderBytes;
  for (float v : fm.values) {
    put_u32(p, std::bit_cast<std::uint32_t>(v));
    p += 4;
  }
  return out;
}

FeatureMap decode_feature_map(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kFeatureHeaderBytes) throw Error(ErrorCode::kFormatError, "truncated header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::kFormatError, "bad magic");
  }
  const std::uint8_t* p = bytes.data();
  if (get_u32(p + 4) != kFeatureFileVersion) {
    throw Error(ErrorCode::kFormatError, fmt::format("unsupported version {}", get_u32(p + 4)));
  }
  const std::uint64_t c = get_u32(p + 8);
  const std::uint64_t h = get_u32(p + 12);
  const std::uint64_t w = get_u32(p + 16);
  if (c == 0 || h == 0 || w == 0) throw Error(ErrorCode::kFormatError, "zero dimension");
  const std::uint64_t n = c * h * w;
  if (n > (bytes.size() - kFeatureHeaderBytes) / 4 ||
      bytes.size() != kFeatureHeaderBytes + n * 4) {
    throw Error(ErrorCode::kFormatError, "payload size does not match dims");
  }
  FeatureMap fm(static_cast<int>(c), static_cast<int>(h), static_cast<int>(w));
  for (std::uint64_t i = 0; i < n; ++i) {
    fm.values[i] = std::bit_cast<float>(get_u32(p + kFeatureHeaderBytes + 4 * i));
  }
  validate(fm);
  return fm;
}

void write_feature_file(const FeatureMap& fm, const std::filesystem::path& path) {
  const auto bytes = encode_feature_map(fm);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("short write to {}", path.string()));
}

FeatureMap read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot read {}", path.string()));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_feature_map(bytes);
}

}  // namespace rc
