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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaaug/augment.hpp"
#include "qaaug/corpus.hpp"

namespace qaaug {

// Raters may refuse to score an incoherent answer; that verdict is its own
// category, distinct from every score.
inline constexpr int kInvalidLabel = 3;

struct AnnotationRecord {
  std::string pair_id;
  Strategy strategy = Strategy::kDictionary;
  int original_label = 0;
  std::string rater_id;
  int assigned = 0;  // 0..2 or kInvalidLabel
};

// ---------------------------------------------------------------------------
// Export for expert re-rating

struct QualityExport {
  std::string annotator_csv;  // pair_id,question_id,answer_original,answer_augmented,label_original
  std::string key_csv;        // pair_id,strategy,record_id
  std::size_t rows = 0;
  std::map<std::string, std::size_t> per_strategy;
  std::map<std::pair<std::string, BucketKey>, std::size_t> per_strategy_bucket;
};

inline constexpr std::string_view kAnnotatorHeader =
    "pair_id,question_id,answer_original,answer_augmented,label_original";
inline constexpr std::string_view kKeyHeader = "pair_id,strategy,record_id";
inline constexpr std::string_view kRatingHeader = "pair_id,rater_id,assigned";

// Draws `per_bucket` augmented records per (strategy, bucket of `base`)
// and shuffles all strategies into one file with anonymous pair ids. The
// strategy stays in the key file only. Throws InsufficientCoverage.
QualityExport export_quality_sample(const Corpus& base,
                                    const std::vector<std::pair<Strategy, Corpus>>& augmented_sets,
                                    int per_bucket, std::uint64_t seed);

struct RatingRow {
  std::string pair_id;
  std::string rater_id;
  int assigned = 0;
};

// `pair_id,rater_id,assigned`; `X` marks an invalid (unscorable) answer.
std::vector<RatingRow> parse_ratings(std::string_view text);
std::string serialize_ratings(const std::vector<RatingRow>& rows);

// Joins ratings with the export and key files.
std::vector<AnnotationRecord> join_annotations(std::string_view annotator_csv,
                                               std::string_view key_csv,
                                               const std::vector<RatingRow>& ratings);

// ---------------------------------------------------------------------------
// Agreement

double observed_agreement(std::span<const int> a, std::span<const int> b);

// Chance-corrected agreement of two raters over any finite category set.
double cohen_kappa(std::span<const int> a, std::span<const int> b);

// `counts[i][j]`: raters who put item i in category j. Every row must sum
// to the same rater count (at least 2).
double fleiss_kappa(const std::vector<std::vector<int>>& counts);

// ---------------------------------------------------------------------------
// Quality report

enum class QualityTier { kHigh, kLow };
enum class QualityMode { kConsensus, kPerRaterAverage };

std::string_view to_string(QualityTier tier);

struct QualityRow {
  Strategy strategy = Strategy::kDictionary;
  std::size_t n = 0;
  // Consensus mode: pairs; per-rater mode: individual ratings.
  std::size_t preserved = 0;
  std::size_t invalid = 0;
  std::size_t changed = 0;
  double quality_pct = 0.0;
  double invalid_pct = 0.0;
  double changed_pct = 0.0;
  QualityTier tier = QualityTier::kLow;
};

struct QualityReport {
  std::vector<QualityRow> rows;  // in strategy order
  std::vector<std::string> raters;
  QualityMode mode = QualityMode::kConsensus;
};

// Consensus: a pair is preserved when every rater gave the original label,
// invalid when every rater marked it invalid, changed otherwise.
// Per-rater: the same three rates averaged over raters. Throws MissingRater
// when a pair lacks a rating from any rater seen in the input.
QualityReport compute_quality_report(const std::vector<AnnotationRecord>& annotations,
                                     double hq_threshold_pct = 90.0,
                                     QualityMode mode = QualityMode::kConsensus);

std::string format_quality_report(const QualityReport& report);

}  // namespace qaaug
