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
#include <string_view>
#include <vector>

// Data-parallel inner loops. Every kernel has a portable scalar reference and
// optional AVX2 / NEON variants; one table is selected at runtime and the
// variants are equivalence-tested against the scalar one.
namespace rc::simd {

struct KernelTable {
  std::string_view name;

  // sum_k (a[k] - b[k])^2
  double (*squared_distance)(const double* a, const double* b, std::size_t n);

  // dst[i] = sum_{k=0}^{2r} taps[k] * src[i + k] for i in [0, n).
  // src must hold n + 2r elements (caller pads). Bit-exact across variants.
  void (*convolve_row)(const float* src, float* dst, std::size_t n, const float* taps,
                       int radius);

  // Sum and sum of squares of src[0, n) accumulated in double.
  void (*sum_and_squares)(const float* src, std::size_t n, double* sum, double* sum_sq);
};

const KernelTable& scalar_kernels();

// Tables usable on this CPU, scalar first.
std::vector<const KernelTable*> available_kernels();

// Best available table, overridable with RC_SIMD=scalar|avx2|neon.
const KernelTable& active_kernels();

}  // namespace rc::simd
