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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qaaug {

inline constexpr int kMinQuestion = 1;
inline constexpr int kMaxQuestion = 11;
inline constexpr int kNumLabels = 3;

enum class Gender { kFemale, kMale, kUndisclosed };
enum class Source { kOriginal, kAugmented, kSynthetic };

std::string_view to_string(Gender g);
std::string_view to_string(Source s);
Gender parse_gender(std::string_view s, std::size_t line = 0);
Source parse_source(std::string_view s, std::size_t line = 0);

// One scored question-answer record. Augmented records carry the id of the
// record they were derived from and the strategies applied, in order.
struct QAPair {
  std::string id;
  int question_id = kMinQuestion;
  std::string answer;
  int label = 0;
  std::optional<int> age_months;
  Gender gender = Gender::kUndisclosed;
  Source source = Source::kOriginal;
  std::optional<std::string> parent_id;
  std::vector<std::string> strategy_chain;

  bool is_augmented() const { return source == Source::kAugmented; }
  bool operator==(const QAPair&) const = default;
};

// Throws LabelOutOfRange or InvalidRecord when a record breaks the data
// model invariants.
void validate_record(const QAPair& pair, std::size_t line = 0);

class Corpus {
 public:
  Corpus() = default;
  Corpus(std::string name, std::vector<QAPair> records);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<QAPair>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // nullptr when absent.
  const QAPair* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  // Validates and appends; throws DuplicateId.
  void add(QAPair pair);

  bool operator==(const Corpus& other) const { return records_ == other.records_; }

 private:
  std::string name_;
  std::vector<QAPair> records_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

inline constexpr std::string_view kCorpusHeader =
    "id,question_id,answer,label,age_months,gender,source,parent_id,strategy_chain";

Corpus parse_corpus(std::string_view text, std::string name = {});
std::string serialize_corpus(const Corpus& corpus);
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Question-label sub-corpora

struct BucketKey {
  int question_id = kMinQuestion;
  int label = 0;

  auto operator<=>(const BucketKey&) const = default;
  std::string str() const;
};

// Demographic stratum inside a bucket: (age in whole years, gender). A
// missing age maps to year -1, the "unknown" cell.
struct DemographicCell {
  int age_years = -1;
  Gender gender = Gender::kUndisclosed;
  auto operator<=>(const DemographicCell&) const = default;
};

DemographicCell demographic_cell(const QAPair& pair);

struct BucketMember {
  std::string id;
  DemographicCell cell;
};

struct SubcorpusIndex {
  std::map<BucketKey, std::vector<BucketMember>> buckets;

  std::size_t total() const;
  const std::vector<BucketMember>& bucket(const BucketKey& key) const;
};

// Indexes every non-augmented record, keeping corpus order inside buckets.
SubcorpusIndex index_subcorpora(const Corpus& corpus);

enum class SamplingMode { kBalancedPerLabel, kProportionalPerQuestion };

struct SamplingConfig {
  int quota_per_bucket = 125;
  SamplingMode mode = SamplingMode::kBalancedPerLabel;
  int per_question_total = 375;
  bool allow_oversampling = false;
  std::uint64_t seed = 0;
};

std::string_view to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(std::string_view s);

using BucketSample = std::map<BucketKey, std::vector<std::string>>;

// Per-bucket sample. Within a bucket the quota is spread over demographic
// cells by largest-remainder apportionment and drawn uniformly inside each
// cell. When a bucket is smaller than its quota and oversampling is on, the
// whole bucket is repeated floor(quota/size) times and the remainder drawn
// stratified. Ids keep corpus order inside each bucket.
BucketSample stratified_sample_buckets(const SubcorpusIndex& index, const SamplingConfig& config);

std::vector<std::string> stratified_sample(const SubcorpusIndex& index, const SamplingConfig& config);

// Largest-remainder apportionment of `total` over `weights`; ties in the
// remainder go to the lower index.
std::vector<int> largest_remainder(int total, const std::vector<std::int64_t>& weights);

}  // namespace qaaug
