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

#include "qaaug/quality.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/rng.hpp"
#include "qaaug/text_io.hpp"

namespace qaaug {

namespace {

struct ExportRow {
  std::string strategy;
  const QAPair* original = nullptr;
  const QAPair* augmented = nullptr;
};

}  // namespace

QualityExport export_quality_sample(const Corpus& base,
                                    const std::vector<std::pair<Strategy, Corpus>>& augmented_sets,
                                    int per_bucket, std::uint64_t seed) {
  if (per_bucket <= 0) throw Error(ErrorCode::kInvalidArgument, "per_bucket must be positive");
  const auto base_index = index_subcorpora(base);
  std::vector<ExportRow> rows;
  QualityExport out;
  for (const auto& [strategy, corpus] : augmented_sets) {
    const std::string name(to_string(strategy));
    std::map<BucketKey, std::vector<const QAPair*>> buckets;
    for (const auto& p : corpus.records()) {
      if (p.is_augmented()) buckets[{p.question_id, p.label}].push_back(&p);
    }
    for (const auto& [key, members] : base_index.buckets) {
      auto& pool = buckets[key];
      if (pool.size() < static_cast<std::size_t>(per_bucket)) {
        throw Error(ErrorCode::kInsufficientCoverage,
                    fmt::format("strategy '{}' has {} augmented records in bucket {}, need {}", name,
                                pool.size(), key.str(), per_bucket));
      }
      auto rng = substream(seed, "quality:" + name, key.str());
      for (int i = 0; i < per_bucket; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        const QAPair* aug = pool[static_cast<std::size_t>(i)];
        const QAPair* orig = base.find(*aug->parent_id);
        if (orig == nullptr) {
          throw Error(ErrorCode::kBrokenProvenance,
                      fmt::format("'{}' has parent '{}' outside the base corpus", aug->id, *aug->parent_id));
        }
        rows.push_back({name, orig, aug});
        ++out.per_strategy[name];
        ++out.per_strategy_bucket[{name, key}];
      }
    }
  }
  auto rng = substream(seed, "quality-shuffle");
  rng.shuffle(std::span<ExportRow>(rows));

  out.annotator_csv = std::string(kAnnotatorHeader) + "\n";
  out.key_csv = std::string(kKeyHeader) + "\n";
  const int width = std::max<int>(4, static_cast<int>(std::to_string(rows.size()).size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto pair_id = fmt::format("p{:0{}}", i + 1, width);
    const auto& r = rows[i];
    out.annotator_csv += csv_line({pair_id, std::to_string(r.original->question_id), r.original->answer,
                                   r.augmented->answer, std::to_string(r.original->label)});
    out.key_csv += csv_line({pair_id, r.strategy, r.augmented->id});
  }
  out.rows = rows.size();
  return out;
}

std::vector<RatingRow> parse_ratings(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty() || join(rows.front().fields, ",") != kRatingHeader) {
    throw Error(ErrorCode::kSchema, fmt::format("header must be '{}'", kRatingHeader), 1);
  }
  std::vector<RatingRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (f.size() != 3) throw Error(ErrorCode::kParse, "expected 3 fields", rows[i].line);
    RatingRow r{f[0], f[1], 0};
    const auto v = trim(f[2]);
    if (v == "X" || v == "x") {
      r.assigned = kInvalidLabel;
    } else {
      r.assigned = static_cast<int>(parse_int(v, "assigned", rows[i].line));
      if (r.assigned < 0 || r.assigned >= kNumLabels) {
        throw Error(ErrorCode::kLabelOutOfRange, fmt::format("assigned label '{}'", v), rows[i].line);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string serialize_ratings(const std::vector<RatingRow>& rows) {
  std::string out = std::string(kRatingHeader) + "\n";
  for (const auto& r : rows) {
    out += csv_line({r.pair_id, r.rater_id,
                     r.assigned == kInvalidLabel ? std::string("X") : std::to_string(r.assigned)});
  }
  return out;
}

std::vector<AnnotationRecord> join_annotations(std::string_view annotator_csv, std::string_view key_csv,
                                               const std::vector<RatingRow>& ratings) {
  std::unordered_map<std::string, int> original_label;
  const auto export_rows = parse_csv(annotator_csv);
  if (export_rows.empty() || join(export_rows.front().fields, ",") != kAnnotatorHeader) {
    throw Error(ErrorCode::kSchema, fmt::format("header must be '{}'", kAnnotatorHeader), 1);
  }
  for (std::size_t i = 1; i < export_rows.size(); ++i) {
    const auto& f = export_rows[i].fields;
    if (f.size() != 5) throw Error(ErrorCode::kParse, "expected 5 fields", export_rows[i].line);
    original_label[f[0]] = static_cast<int>(parse_int(f[4], "label_original", export_rows[i].line));
  }
  std::unordered_map<std::string, Strategy> strategy;
  const auto key_rows = parse_csv(key_csv);
  if (key_rows.empty() || join(key_rows.front().fields, ",") != kKeyHeader) {
    throw Error(ErrorCode::kSchema, fmt::format("header must be '{}'", kKeyHeader), 1);
  }
  for (std::size_t i = 1; i < key_rows.size(); ++i) {
    const auto& f = key_rows[i].fields;
    if (f.size() != 3) throw Error(ErrorCode::kParse, "expected 3 fields", key_rows[i].line);
    strategy[f[0]] = parse_strategy(f[1]);
  }
  std::vector<AnnotationRecord> out;
  for (const auto& r : ratings) {
    const auto s = strategy.find(r.pair_id);
    const auto l = original_label.find(r.pair_id);
    if (s == strategy.end() || l == original_label.end()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("rating for unknown pair '{}'", r.pair_id));
    }
    out.push_back({r.pair_id, s->second, l->second, r.rater_id, r.assigned});
  }
  return out;
}

double observed_agreement(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kLengthMismatch, "rating sequences differ in length");
  if (a.empty()) throw Error(ErrorCode::kEmptyInput, "no ratings");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(a.size());
}

double cohen_kappa(std::span<const int> a, std::span<const int> b) {
  const double po = observed_agreement(a, b);
  std::map<int, std::pair<std::size_t, std::size_t>> marginals;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
  }
  const auto n = static_cast<double>(a.size());
  double pe = 0.0;
  for (const auto& [category, m] : marginals) {
    pe += (static_cast<double>(m.first) / n) * (static_cast<double>(m.second) / n);
  }
  if (pe >= 1.0) return 1.0;  // both raters used one shared category throughout
  return (po - pe) / (1.0 - pe);
}

double fleiss_kappa(const std::vector<std::vector<int>>& counts) {
  if (counts.empty()) throw Error(ErrorCode::kEmptyInput, "no items");
  const std::size_t k = counts.front().size();
  long raters = -1;
  for (const auto& row : counts) {
    if (row.size() != k) throw Error(ErrorCode::kLengthMismatch, "items differ in category count");
    long n = 0;
    for (int c : row) {
      if (c < 0) throw Error(ErrorCode::kInvalidArgument, "negative rating count");
      n += c;
    }
    if (raters < 0) raters = n;
    if (n != raters) throw Error(ErrorCode::kUnequalRaters, "items have different rater counts");
  }
  if (raters < 2) throw Error(ErrorCode::kUnequalRaters, "need at least two raters per item");
  const auto n = static_cast<double>(raters);
  const auto items = static_cast<double>(counts.size());
  std::vector<double> column(k, 0.0);
  double p_bar = 0.0;
  for (const auto& row : counts) {
    double sq = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      sq += static_cast<double>(row[j]) * row[j];
      column[j] += row[j];
    }
    p_bar += (sq - n) / (n * (n - 1.0));
  }
  p_bar /= items;
  double pe = 0.0;
  for (double c : column) {
    const double p = c / (items * n);
    pe += p * p;
  }
  if (pe >= 1.0) return 1.0;
  return (p_bar - pe) / (1.0 - pe);
}

std::string_view to_string(QualityTier tier) { return tier == QualityTier::kHigh ? "HQ" : "LQ"; }

QualityReport compute_quality_report(const std::vector<AnnotationRecord>& annotations,
                                     double hq_threshold_pct, QualityMode mode) {
  QualityReport report;
  report.mode = mode;
  std::set<std::string> raters;
  for (const auto& a : annotations) raters.insert(a.rater_id);
  report.raters.assign(raters.begin(), raters.end());

  struct PairRatings {
    Strategy strategy;
    int original;
    std::map<std::string, int> by_rater;
  };
  std::map<std::string, PairRatings> pairs;
  for (const auto& a : annotations) {
    auto [it, inserted] = pairs.try_emplace(a.pair_id, PairRatings{a.strategy, a.original_label, {}});
    if (!inserted && (it->second.strategy != a.strategy || it->second.original != a.original_label)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("pair '{}' has inconsistent strategy or original label", a.pair_id));
    }
    it->second.by_rater[a.rater_id] = a.assigned;
  }

  std::map<Strategy, QualityRow> rows;
  for (const auto& [pair_id, p] : pairs) {
    if (p.by_rater.size() != raters.size()) {
      throw Error(ErrorCode::kMissingRater,
                  fmt::format("pair '{}' has {} of {} ratings", pair_id, p.by_rater.size(), raters.size()));
    }
    auto& row = rows[p.strategy];
    row.strategy = p.strategy;
    if (mode == QualityMode::kConsensus) {
      bool all_same = true, all_invalid = true;
      for (const auto& [r, v] : p.by_rater) {
        all_same = all_same && v == p.original;
        all_invalid = all_invalid && v == kInvalidLabel;
      }
      ++row.n;
      if (all_same) {
        ++row.preserved;
      } else if (all_invalid) {
        ++row.invalid;
      } else {
        ++row.changed;
      }
    } else {
      for (const auto& [r, v] : p.by_rater) {
        ++row.n;
        if (v == p.original) {
          ++row.preserved;
        } else if (v == kInvalidLabel) {
          ++row.invalid;
        } else {
          ++row.changed;
        }
      }
    }
  }
  for (auto& [s, row] : rows) {
    const auto n = static_cast<double>(row.n);
    row.quality_pct = 100.0 * static_cast<double>(row.preserved) / n;
    row.invalid_pct = 100.0 * static_cast<double>(row.invalid) / n;
    row.changed_pct = 100.0 * static_cast<double>(row.changed) / n;
    row.tier = row.quality_pct >= hq_threshold_pct ? QualityTier::kHigh : QualityTier::kLow;
    report.rows.push_back(row);
  }
  return report;
}

std::string format_quality_report(const QualityReport& report) {
  std::string out = "strategy,n,quality_pct,invalid_pct,changed_pct,tier\n";
  for (const auto& r : report.rows) {
    out += fmt::format("{},{},{:.2f},{:.2f},{:.2f},{}\n", to_string(r.strategy), r.n, r.quality_pct,
                       r.invalid_pct, r.changed_pct, to_string(r.tier));
  }
  return out;
}

}  // namespace qaaug
