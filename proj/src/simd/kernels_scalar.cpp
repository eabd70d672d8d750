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

#include "kernels_impl.hpp"

namespace rc::simd {
namespace {

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

void convolve_row_scalar(const float* src, float* dst, std::size_t n, const float* taps,
                         int radius) {
  const int len = 2 * radius + 1;
  for (std::size_t i = 0; i < n; ++i) {
    float acc = 0.0f;
    for (int k = 0; k < len; ++k) acc += taps[k] * src[i + k];
    dst[i] = acc;
  }
}

void sum_and_squares_scalar(const float* src, std::size_t n, double* sum, double* sum_sq) {
  double s = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = src[i];
    s += v;
    s2 += v * v;
  }
  *sum += s;
  *sum_sq += s2;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &squared_distance_scalar, &convolve_row_scalar,
                                 &sum_and_squares_scalar};
  return table;
}

}  // namespace rc::simd
