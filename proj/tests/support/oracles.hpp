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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace rc::testing {

using Rows = std::vector<std::vector<double>>;

// Direct evaluation of the biased squared MMD with a Gaussian kernel.
inline double naive_mmd2(const Rows& x, const Rows& y, double sigma) {
  auto k = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return std::exp(-d2 / (2.0 * sigma * sigma));
  };
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (const auto& a : x)
    for (const auto& b : x) xx += k(a, b);
  for (const auto& a : y)
    for (const auto& b : y) yy += k(a, b);
  for (const auto& a : x)
    for (const auto& b : y) xy += k(a, b);
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  return std::max(0.0, xx / (m * m) + yy / (n * n) - 2.0 * xy / (m * n));
}

// Pair enumeration; tau-b with the tie terms counted explicitly.
inline double brute_tau(const std::vector<double>& a, const std::vector<double>& b) {
  double c = 0, d = 0, ta = 0, tb = 0, pairs = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j <= i) continue;
      pairs += 1;
      const double da = a[i] - a[j], db = b[i] - b[j];
      if (da == 0) ta += 1;
      if (db == 0) tb += 1;
      if (da * db > 0) c += 1;
      if (da * db < 0) d += 1;
    }
  }
  const double den = std::sqrt((pairs - ta) * (pairs - tb));
  return den == 0 ? std::numeric_limits<double>::quiet_NaN() : (c - d) / den;
}

// Ranks from counting smaller and equal elements (average ranks for ties).
inline std::vector<double> brute_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) less += 1;
      if (w == v[i]) equal += 1;
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

inline double brute_rho(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = brute_ranks(a), rb = brute_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i] / n;
    mb += rb[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Squared deviation of rank sums over the maximum attainable deviation.
inline double brute_w(const std::vector<std::vector<int>>& rows) {
  const std::size_t m = rows.front().size();
  std::vector<double> sums(m, 0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < m; ++j) sums[j] += r[j];
  double mean = 0;
  for (double s : sums) mean += s / static_cast<double>(m);
  double s = 0;
  for (double v : sums) s += (v - mean) * (v - mean);
  // Perfect agreement: rank sums R, 2R, ..., MR.
  double smax = 0;
  const double rr = static_cast<double>(rows.size());
  for (std::size_t j = 1; j <= m; ++j) smax += (rr * j - mean) * (rr * j - mean);
  return s / smax;
}

}  // namespace rc::testing
