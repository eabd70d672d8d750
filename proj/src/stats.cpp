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

#include "rc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "rc/error.hpp"

namespace rc {

void require_permutation(std::span<const int> row, std::size_t m) {
  if (row.size() != m) {
    throw Error(ErrorCode::kInvalidPermutation, fmt::format("row has {} ranks, expected {}", row.size(), m));
  }
  std::vector<bool> seen(m + 1, false);
  for (int r : row) {
    if (r < 1 || static_cast<std::size_t>(r) > m || seen[r]) {
      throw Error(ErrorCode::kInvalidPermutation, fmt::format("rank {} invalid or repeated", r));
    }
    seen[r] = true;
  }
}

std::vector<int> borda_scores(const std::vector<std::vector<int>>& rows, std::size_t m) {
  std::vector<int> totals(m, 0);
  for (const auto& row : rows) {
    require_permutation(row, m);
    for (std::size_t j = 0; j < m; ++j) totals[j] += static_cast<int>(m) - row[j];
  }
  return totals;
}

namespace {

void require_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("lengths {} vs {}", a.size(), b.size()));
  }
  if (a.size() < 2) throw Error(ErrorCode::kLengthMismatch, "need at least 2 elements");
}

bool has_ties(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  require_pair(a, b);
  const std::size_t n = a.size();
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sa = sign(a[i] - a[j]);
      const int sb = sign(b[i] - b[j]);
      if (sa == 0) ++ties_a;
      if (sb == 0) ++ties_b;
      if (sa * sb > 0) ++concordant;
      if (sa * sb < 0) ++discordant;
    }
  }
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const double denom = std::sqrt((pairs - ties_a) * (pairs - ties_b));
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(concordant - discordant) / denom;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
  require_pair(a, b);
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  if (!has_ties(a) && !has_ties(b)) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  }
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

double kendall_w(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) throw Error(ErrorCode::kInvalidPermutation, "kendall_w needs >= 2 raters");
  const std::size_t m = rows.front().size();
  if (m < 2) throw Error(ErrorCode::kInvalidPermutation, "kendall_w needs >= 2 objects");
  const double r = static_cast<double>(rows.size());
  const double md = static_cast<double>(m);
  std::vector<double> sums(m, 0.0);
  double tie_term = 0.0;
  for (const auto& row : rows) {
    if (row.size() != m) throw Error(ErrorCode::kInvalidPermutation, "ragged ranking rows");
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      sums[j] += row[j];
      total += row[j];
    }
    // Ranks (average ranks for ties) always sum to M(M+1)/2.
    if (std::abs(total - md * (md + 1.0) / 2.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidPermutation, "row is not a ranking of 1..M");
    }
    std::vector<double> sorted(row);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < m;) {
      std::size_t j = i;
      while (j + 1 < m && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  const double mean = r * (md + 1.0) / 2.0;
  double s = 0.0;
  for (double v : sums) s += (v - mean) * (v - mean);
  const double denom = r * r * (md * md * md - md) - r * tie_term;
  if (denom <= 0.0) return 1.0;  // every rater tied every object
  return 12.0 * s / denom;
}

double kendall_w(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<double>> d;
  d.reserve(rows.size());
  for (const auto& row : rows) {
    require_permutation(row, rows.front().size());
    d.emplace_back(row.begin(), row.end());
  }
  return kendall_w(d);
}

InducedRanking rank_by_value(std::span<const double> values, bool higher_is_better) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return higher_is_better ? values[x] > values[y] : values[x] < values[y];
  });
  InducedRanking out;
  out.ranks.resize(values.size());
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    out.ranks[idx[pos]] = static_cast<int>(pos) + 1;
    if (pos > 0 && values[idx[pos]] == values[idx[pos - 1]]) out.tie = true;
  }
  return out;
}

CorrelationReport correlate(const MetricScores& metric, bool higher_is_better, const RankingTable& human) {
  if (human.items.empty()) throw Error(ErrorCode::kItemMismatch, "no human-ranked items");
  if (metric.size() != human.items.size()) {
    throw Error(ErrorCode::kItemMismatch,
                fmt::format("{} scored items vs {} ranked items", metric.size(), human.items.size()));
  }
  const std::size_t m = human.methods.size();
  CorrelationReport report;
  report.n_items = human.items.size();
  report.n_methods = m;
  std::vector<double> pooled_metric, pooled_human;
  double tau_sum = 0.0, rho_sum = 0.0, w_sum = 0.0;
  std::size_t w_count = 0;
  for (const ItemRankings& item : human.items) {
    const auto it = metric.find(item.item);
    if (it == metric.end()) throw Error(ErrorCode::kItemMismatch, fmt::format("item '{}' has no metric scores", item.item));
    if (it->second.size() != m) {
      throw Error(ErrorCode::kItemMismatch, fmt::format("item '{}': {} scored methods, {} ranked", item.item, it->second.size(), m));
    }
    std::vector<double> scores(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto s = it->second.find(human.methods[j]);
      if (s == it->second.end()) {
        throw Error(ErrorCode::kItemMismatch, fmt::format("item '{}' lacks method '{}'", item.item, human.methods[j]));
      }
      scores[j] = s->second;
    }
    const std::vector<int> borda = borda_scores(item.rows, m);
    const InducedRanking metric_rank = rank_by_value(scores, higher_is_better);
    const InducedRanking human_rank = rank_by_value(std::vector<double>(borda.begin(), borda.end()), true);

    ItemCorrelation ic;
    ic.item = item.item;
    const std::vector<double> mr(metric_rank.ranks.begin(), metric_rank.ranks.end());
    const std::vector<double> hr(human_rank.ranks.begin(), human_rank.ranks.end());
    ic.tau = kendall_tau(mr, hr);
    ic.rho = spearman_rho(mr, hr);
    ic.metric_tie = metric_rank.tie;
    ic.human_tie = human_rank.tie;
    ic.metric_ranks = metric_rank.ranks;
    ic.human_ranks = human_rank.ranks;
    if (item.rows.size() >= 2) {
      ic.rater_w = kendall_w(item.rows);
      w_sum += ic.rater_w;
      ++w_count;
    } else {
      ic.rater_w = std::numeric_limits<double>::quiet_NaN();
    }
    tau_sum += ic.tau;
    rho_sum += ic.rho;
    report.any_metric_tie = report.any_metric_tie || ic.metric_tie;
    report.any_human_tie = report.any_human_tie || ic.human_tie;
    pooled_metric.insert(pooled_metric.end(), mr.begin(), mr.end());
    pooled_human.insert(pooled_human.end(), hr.begin(), hr.end());
    report.per_item.push_back(std::move(ic));
  }
  const double n = static_cast<double>(report.n_items);
  report.tau_pooled = kendall_tau(pooled_metric, pooled_human);
  report.tau_item_mean = tau_sum / n;
  report.rho_mean = rho_sum / n;
  report.rater_w_mean = w_count ? w_sum / static_cast<double>(w_count) : std::numeric_limits<double>::quiet_NaN();
  return report;
}

namespace {

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const CorrelationReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const ItemCorrelation& ic : r.per_item) {
    items.push_back({{"item", ic.item},
                     {"tau", finite_or_null(ic.tau)},
                     {"rho", finite_or_null(ic.rho)},
                     {"rater_w", finite_or_null(ic.rater_w)},
                     {"metric_tie", ic.metric_tie},
                     {"human_tie", ic.human_tie},
                     {"metric_ranks", ic.metric_ranks},
                     {"human_ranks", ic.human_ranks}});
  }
  return {{"tau", finite_or_null(r.tau_pooled)},
          {"tau_item_mean", finite_or_null(r.tau_item_mean)},
          {"rho_mean", finite_or_null(r.rho_mean)},
          {"kendall_w", finite_or_null(r.rater_w_mean)},
          {"n_items", r.n_items},
          {"n_methods", r.n_methods},
          {"metric_ties", r.any_metric_tie},
          {"human_ties", r.any_human_tie},
          {"per_item", std::move(items)}};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::size_t column_of(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorCode::kFormatError, fmt::format("CSV lacks column '{}'", name));
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

MetricScores read_metric_csv(std::istream& in, const std::string& score_column) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, "empty metric CSV");
  const auto header = split_csv_line(line);
  const std::size_t ci = column_of(header, "item");
  const std::size_t cm = column_of(header, "method");
  const std::size_t cs = column_of(header, score_column);
  MetricScores out;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv_line(line);
    if (f.size() <= std::max({ci, cm, cs})) continue;
    if (f[cs].empty()) continue;
    out[f[ci]][f[cm]] = std::stod(f[cs]);
  }
  return out;
}

RankingTable read_rankings_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, "empty ranking CSV");
  const auto header = split_csv_line(line);
  const std::size_t ci = column_of(header, "item");
  const std::size_t cr = column_of(header, "rater");
  const std::size_t cm = column_of(header, "method");
  const std::size_t ck = column_of(header, "rank");
  std::map<std::string, std::map<std::string, std::map<std::string, int>>> raw;
  std::set<std::string> methods;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv_line(line);
    if (f.size() <= std::max({ci, cr, cm, ck})) throw Error(ErrorCode::kFormatError, "short ranking row");
    raw[f[ci]][f[cr]][f[cm]] = std::stoi(f[ck]);
    methods.insert(f[cm]);
  }
  RankingTable table;
  table.methods.assign(methods.begin(), methods.end());
  for (const auto& [item, raters] : raw) {
    ItemRankings ir;
    ir.item = item;
    for (const auto& [rater, ranks] : raters) {
      std::vector<int> row;
      for (const std::string& m : table.methods) {
        const auto it = ranks.find(m);
        if (it == ranks.end()) {
          throw Error(ErrorCode::kInvalidPermutation,
                      fmt::format("item '{}' rater '{}' did not rank '{}'", item, rater, m));
        }
        row.push_back(it->second);
      }
      require_permutation(row, table.methods.size());
      ir.raters.push_back(rater);
      ir.rows.push_back(std::move(row));
    }
    table.items.push_back(std::move(ir));
  }
  return table;
}

}  // namespace rc
