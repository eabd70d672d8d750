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

#include <filesystem>
#include <string>
#include <vector>

#include "rc/image.hpp"

namespace rc {

// PNG or JPEG, converted to 8-bit RGB. Throws IoError.
RgbImage read_image(const std::filesystem::path& path);
void write_png(const RgbImage& image, const std::filesystem::path& path);

// Single-channel 8-bit PNG (other layouts are converted to gray); >= 128 is set.
BinaryMask read_mask(const std::filesystem::path& path);
void write_mask(const BinaryMask& mask, const std::filesystem::path& path);

// Frame files (.png/.jpg/.jpeg) in a directory, sorted by file name.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

// Zero-padded frame file name: 00042.png
std::string frame_name(std::size_t index);

std::vector<RgbImage> read_frames(const std::filesystem::path& dir);
std::vector<BinaryMask> read_masks(const std::filesystem::path& dir);
void write_frames(const std::vector<RgbImage>& frames, const std::filesystem::path& dir);
void write_masks(const std::vector<BinaryMask>& masks, const std::filesystem::path& dir);

}  // namespace rc
