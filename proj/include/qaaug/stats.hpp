// Copyright 2026 The qaaug Authors.
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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qaaug {

// Scores of N experimental units (rows) under k treatments (columns).
struct RankMatrix {
  std::vector<std::string> units;
  std::vector<std::string> treatments;
  std::vector<std::vector<double>> scores;
  bool higher_is_better = true;

  std::size_t n() const { return scores.size(); }
  std::size_t k() const { return treatments.size(); }
};

// Ranks within one row, 1 = best, ties share the mean of their positions.
std::vector<double> midranks(std::span<const double> values, bool higher_is_better = true);

// Regularised upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);
// Regularised incomplete beta I_x(a, b).
double regularized_beta(double a, double b, double x);

double chi_square_sf(double x, double dof);
double f_distribution_sf(double x, double dof1, double dof2);

struct FriedmanResult {
  double statistic = 0.0;  // chi-square form
  double p_value = 1.0;
  std::vector<double> average_ranks;
  // Iman-Davenport F form, filled when requested.
  bool iman_davenport = false;
  double f_statistic = 0.0;
  double f_p_value = 1.0;
};

// Requires N >= 2 and k >= 3.
FriedmanResult friedman_test(const RankMatrix& m, bool iman_davenport = false);

// Critical value q_alpha for k treatments (2..20), alpha 0.05 or 0.10.
double nemenyi_q(std::size_t k, double alpha);
double nemenyi_cd(std::size_t k, std::size_t n, double alpha = 0.05);

// Maximal runs of treatments, in rank order, whose pairwise average-rank
// gaps are all below `cd`. Singletons are included. Indices refer to the
// input order.
std::vector<std::vector<std::size_t>> cd_groups(std::span<const double> average_ranks, double cd);

struct RankingResult {
  std::vector<std::string> treatments;
  std::vector<double> average_ranks;
  double statistic = 0.0;
  double p_value = 1.0;
  double cd = 0.0;
  double alpha = 0.05;
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> groups;
};

RankingResult rank_treatments(const RankMatrix& m, double alpha = 0.05, bool iman_davenport = false);

// ASCII rendering: treatments by rank with one column per connected group.
std::string render_cd_ascii(const RankingResult& r);
// Deterministic SVG rendering of the same diagram.
std::string render_cd_svg(const RankingResult& r);

std::string serialize_rank_matrix(const RankMatrix& m);
RankMatrix parse_rank_matrix(std::string_view text, bool higher_is_better = true);
std::string serialize_ranking(const RankingResult& r);

}  // namespace qaaug
