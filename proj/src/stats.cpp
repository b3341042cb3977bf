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

#include "qaaug/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/text_io.hpp"

namespace qaaug {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

// Demsar's table for k <= 10; larger k from the studentized range
// quantile at infinite degrees of freedom divided by sqrt(2), rounded to
// three decimals like the rest of the table.
constexpr std::array<double, 21> kQ05 = {0,     0,     1.960, 2.343, 2.569, 2.728, 2.850,
                                         2.949, 3.031, 3.102, 3.164, 3.219, 3.268, 3.313,
                                         3.354, 3.391, 3.426, 3.458, 3.489, 3.517, 3.544};
constexpr std::array<double, 21> kQ10 = {0,     0,     1.645, 2.052, 2.291, 2.459, 2.589,
                                         2.693, 2.780, 2.855, 2.920, 2.978, 3.030, 3.077,
                                         3.120, 3.159, 3.196, 3.230, 3.261, 3.291, 3.319};

}  // namespace

std::vector<double> midranks(std::span<const double> values, bool higher_is_better) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return higher_is_better ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = r;
    i = j;
  }
  return ranks;
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0) throw Error(ErrorCode::kInvalidArgument, "gamma shape must be positive");
  if (x < 0.0) throw Error(ErrorCode::kInvalidArgument, "gamma argument must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double regularized_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw Error(ErrorCode::kInvalidArgument, "beta parameters must be positive");
  if (x < 0.0 || x > 1.0) throw Error(ErrorCode::kInvalidArgument, "beta argument outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front =
      std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(dof / 2.0, x / 2.0);
}

double f_distribution_sf(double x, double dof1, double dof2) {
  if (x <= 0.0) return 1.0;
  return regularized_beta(dof2 / 2.0, dof1 / 2.0, dof2 / (dof2 + dof1 * x));
}

FriedmanResult friedman_test(const RankMatrix& m, bool iman_davenport) {
  const std::size_t n = m.n();
  const std::size_t k = m.k();
  if (k < 3) throw Error(ErrorCode::kInvalidArgument, fmt::format("Friedman test needs k >= 3, got {}", k));
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, fmt::format("Friedman test needs N >= 2, got {}", n));
  FriedmanResult r;
  r.average_ranks.assign(k, 0.0);
  for (const auto& row : m.scores) {
    if (row.size() != k) throw Error(ErrorCode::kDimensionMismatch, "rank matrix row width differs from treatment count");
    const auto ranks = midranks(row, m.higher_is_better);
    for (std::size_t j = 0; j < k; ++j) r.average_ranks[j] += ranks[j];
  }
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  double sq = 0.0;
  for (auto& rank : r.average_ranks) {
    rank /= dn;
    sq += rank * rank;
  }
  r.statistic = 12.0 * dn / (dk * (dk + 1.0)) * (sq - dk * (dk + 1.0) * (dk + 1.0) / 4.0);
  if (std::fabs(r.statistic) < 1e-12) r.statistic = 0.0;
  r.p_value = chi_square_sf(r.statistic, dk - 1.0);
  if (iman_davenport) {
    r.iman_davenport = true;
    const double denom = dn * (dk - 1.0) - r.statistic;
    const double d1 = dk - 1.0;
    const double d2 = (dk - 1.0) * (dn - 1.0);
    if (denom <= 0.0) {
      r.f_statistic = std::numeric_limits<double>::infinity();
      r.f_p_value = 0.0;
    } else {
      r.f_statistic = (dn - 1.0) * r.statistic / denom;
      r.f_p_value = f_distribution_sf(r.f_statistic, d1, d2);
    }
  }
  return r;
}

double nemenyi_q(std::size_t k, double alpha) {
  if (k < 2 || k >= kQ05.size()) {
    throw Error(ErrorCode::kOutOfTable, fmt::format("no Nemenyi critical value for k = {}", k));
  }
  if (std::fabs(alpha - 0.05) < 1e-12) return kQ05[k];
  if (std::fabs(alpha - 0.10) < 1e-12) return kQ10[k];
  throw Error(ErrorCode::kOutOfTable, fmt::format("no Nemenyi critical value for alpha = {}", alpha));
}

double nemenyi_cd(std::size_t k, std::size_t n, double alpha) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "N must be positive");
  const double q = nemenyi_q(k, alpha);
  const double dk = static_cast<double>(k);
  return q * std::sqrt(dk * (dk + 1.0) / (6.0 * static_cast<double>(n)));
}

std::vector<std::vector<std::size_t>> cd_groups(std::span<const double> average_ranks, double cd) {
  std::vector<std::size_t> order(average_ranks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return average_ranks[a] < average_ranks[b]; });
  std::vector<std::vector<std::size_t>> groups;
  std::size_t last_end = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t j = i;
    while (j + 1 < order.size() && average_ranks[order[j + 1]] - average_ranks[order[i]] < cd) ++j;
    // An interval is maximal unless the previous one already reached j.
    if (i == 0 || j + 1 > last_end) {
      groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                          order.begin() + static_cast<std::ptrdiff_t>(j + 1));
      last_end = j + 1;
    }
  }
  return groups;
}

RankingResult rank_treatments(const RankMatrix& m, double alpha, bool iman_davenport) {
  const auto f = friedman_test(m, iman_davenport);
  RankingResult r;
  r.treatments = m.treatments;
  r.average_ranks = f.average_ranks;
  r.statistic = f.statistic;
  r.p_value = f.p_value;
  r.alpha = alpha;
  r.n = m.n();
  r.cd = nemenyi_cd(m.k(), m.n(), alpha);
  r.groups = cd_groups(r.average_ranks, r.cd);
  return r;
}

std::string serialize_rank_matrix(const RankMatrix& m) {
  std::vector<std::string> header{"unit"};
  header.insert(header.end(), m.treatments.begin(), m.treatments.end());
  std::string out = csv_line(header);
  for (std::size_t i = 0; i < m.n(); ++i) {
    std::vector<std::string> row{i < m.units.size() ? m.units[i] : fmt::format("u{}", i)};
    for (double v : m.scores[i]) row.push_back(format_real(v));
    out += csv_line(row);
  }
  return out;
}

RankMatrix parse_rank_matrix(std::string_view text, bool higher_is_better) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::kEmptyInput, "rank matrix is empty");
  const auto& header = rows.front();
  if (header.fields.size() < 2 || header.fields[0] != "unit") {
    throw Error(ErrorCode::kSchema, "rank matrix header must start with 'unit'", header.line);
  }
  RankMatrix m;
  m.higher_is_better = higher_is_better;
  m.treatments.assign(header.fields.begin() + 1, header.fields.end());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != header.fields.size()) {
      throw Error(ErrorCode::kSchema, "rank matrix row width differs from header", row.line);
    }
    m.units.push_back(row.fields[0]);
    std::vector<double> scores;
    for (std::size_t j = 1; j < row.fields.size(); ++j) scores.push_back(parse_double(row.fields[j], "score", row.line));
    m.scores.push_back(std::move(scores));
  }
  return m;
}

std::string serialize_ranking(const RankingResult& r) {
  std::string out = fmt::format("# friedman_statistic={} p_value={} cd={} alpha={} n={}\n", format_real(r.statistic),
                                format_real(r.p_value), format_real(r.cd), format_real(r.alpha), r.n);
  out += csv_line({"treatment", "average_rank", "group"});
  for (std::size_t j = 0; j < r.treatments.size(); ++j) {
    std::string member;
    for (std::size_t g = 0; g < r.groups.size(); ++g) {
      if (std::find(r.groups[g].begin(), r.groups[g].end(), j) != r.groups[g].end()) {
        member += member.empty() ? fmt::format("{}", g) : fmt::format("|{}", g);
      }
    }
    out += csv_line({r.treatments[j], format_real(r.average_ranks[j]), member});
  }
  return out;
}

}  // namespace qaaug
