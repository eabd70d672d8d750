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

#include "rc/error.hpp"

namespace rc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kWindowTooLarge: return "WindowTooLarge";
    case ErrorCode::kDegenerateCrop: return "DegenerateCrop";
    case ErrorCode::kTooFewFrames: return "TooFewFrames";
    case ErrorCode::kFeatureUnavailable: return "FeatureUnavailable";
    case ErrorCode::kModelLoadError: return "ModelLoadError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kLevelTooLarge: return "LevelTooLarge";
    case ErrorCode::kNoDonorAvailable: return "NoDonorAvailable";
    case ErrorCode::kAmplitudeTooLarge: return "AmplitudeTooLarge";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kItemMismatch: return "ItemMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace rc
