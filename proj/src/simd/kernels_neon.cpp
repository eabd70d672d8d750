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

#if defined(__aarch64__)
#include <arm_neon.h>

namespace rc::simd {
namespace {

double squared_distance_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    float64x2_t d0 = vsubq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
    float64x2_t d1 = vsubq_f64(vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

void convolve_row_neon(const float* src, float* dst, std::size_t n, const float* taps,
                       int radius) {
  const int len = 2 * radius + 1;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    for (int k = 0; k < len; ++k) {
      acc = vaddq_f32(acc, vmulq_f32(vdupq_n_f32(taps[k]), vld1q_f32(src + i + k)));
    }
    vst1q_f32(dst + i, acc);
  }
  for (; i < n; ++i) {
    float acc = 0.0f;
    for (int k = 0; k < len; ++k) acc += taps[k] * src[i + k];
    dst[i] = acc;
  }
}

void sum_and_squares_neon(const float* src, std::size_t n, double* sum, double* sum_sq) {
  float64x2_t s = vdupq_n_f64(0.0);
  float64x2_t s2 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vcvt_f64_f32(vld1_f32(src + i));
    s = vaddq_f64(s, v);
    s2 = vfmaq_f64(s2, v, v);
  }
  double ts = vaddvq_f64(s);
  double ts2 = vaddvq_f64(s2);
  for (; i < n; ++i) {
    const double v = src[i];
    ts += v;
    ts2 += v * v;
  }
  *sum += ts;
  *sum_sq += ts2;
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{"neon", &squared_distance_neon, &convolve_row_neon,
                                 &sum_and_squares_neon};
  return &table;
}

const KernelTable* avx2_kernels() { return nullptr; }

}  // namespace rc::simd

#endif
