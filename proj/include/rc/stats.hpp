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
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace rc {

// Human rankings of M methods on each item; rows[r][m] is rater r's rank of
// methods[m] (1 = best).
struct ItemRankings {
  std::string item;
  std::vector<std::string> raters;
  std::vector<std::vector<int>> rows;
};

struct RankingTable {
  std::vector<std::string> methods;  // sorted; defines method-name order
  std::vector<ItemRankings> items;   // sorted by item id
};

// Throws InvalidPermutation unless row is a permutation of 1..m.
void require_permutation(std::span<const int> row, std::size_t m);

// Rank r earns m - r points; per-method totals over raters.
std::vector<int> borda_scores(const std::vector<std::vector<int>>& rows, std::size_t m);

// Tie-corrected tau-b. NaN when either input is constant.
double kendall_tau(std::span<const double> a, std::span<const double> b);

// Pearson correlation of average ranks; the closed form 1 - 6 sum d^2 / (n^3 - n)
// is used when neither input has ties.
double spearman_rho(std::span<const double> a, std::span<const double> b);

// Average ranks (1-based) of values, ascending.
std::vector<double> average_ranks(std::span<const double> values);

// Concordance of R rankers over M objects; rows may contain tied (average) ranks.
double kendall_w(const std::vector<std::vector<double>>& rows);
double kendall_w(const std::vector<std::vector<int>>& rows);

struct InducedRanking {
  std::vector<int> ranks;  // permutation of 1..M over methods
  bool tie = false;        // equal values were broken by method-name order
};

// Ranks values (best first); equal values go to the earlier method index.
InducedRanking rank_by_value(std::span<const double> values, bool higher_is_better);

// item -> method -> score
using MetricScores = std::map<std::string, std::map<std::string, double>>;

struct ItemCorrelation {
  std::string item;
  double tau = 0.0;
  double rho = 0.0;
  double rater_w = 0.0;
  bool metric_tie = false;
  bool human_tie = false;
  std::vector<int> metric_ranks;
  std::vector<int> human_ranks;
};

struct CorrelationReport {
  double tau_pooled = 0.0;     // tau-b over the concatenated per-item rank vectors
  double tau_item_mean = 0.0;  // mean of per-item tau
  double rho_mean = 0.0;       // mean of per-item Spearman rho
  double rater_w_mean = 0.0;   // mean per-item Kendall W of the raters
  std::size_t n_items = 0;
  std::size_t n_methods = 0;
  bool any_metric_tie = false;
  bool any_human_tie = false;
  std::vector<ItemCorrelation> per_item;
};

CorrelationReport correlate(const MetricScores& metric, bool higher_is_better, const RankingTable& human);

nlohmann::json to_json(const CorrelationReport& report);

// CSV with a header row. Metric rows: item,method,<score column>; empty
// scores are skipped. Ranking rows: item,rater,method,rank.
MetricScores read_metric_csv(std::istream& in, const std::string& score_column = "score");
RankingTable read_rankings_csv(std::istream& in);

}  // namespace rc
