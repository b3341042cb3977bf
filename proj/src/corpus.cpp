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

#include "qaaug/corpus.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/rng.hpp"
#include "qaaug/text_io.hpp"

namespace qaaug {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::kFemale: return "female";
    case Gender::kMale: return "male";
    case Gender::kUndisclosed: return "undisclosed";
  }
  return "undisclosed";
}

std::string_view to_string(Source s) {
  switch (s) {
    case Source::kOriginal: return "original";
    case Source::kAugmented: return "augmented";
    case Source::kSynthetic: return "synthetic";
  }
  return "original";
}

Gender parse_gender(std::string_view s, std::size_t line) {
  if (s == "female") return Gender::kFemale;
  if (s == "male") return Gender::kMale;
  if (s == "undisclosed") return Gender::kUndisclosed;
  throw Error(ErrorCode::kParse, fmt::format("unknown gender '{}'", s), line);
}

Source parse_source(std::string_view s, std::size_t line) {
  if (s == "original") return Source::kOriginal;
  if (s == "augmented") return Source::kAugmented;
  if (s == "synthetic") return Source::kSynthetic;
  throw Error(ErrorCode::kParse, fmt::format("unknown source '{}'", s), line);
}

void validate_record(const QAPair& pair, std::size_t line) {
  if (pair.label < 0 || pair.label >= kNumLabels) {
    throw Error(ErrorCode::kLabelOutOfRange,
                fmt::format("record '{}' has label {}", pair.id, pair.label), line);
  }
  if (pair.id.empty()) throw Error(ErrorCode::kInvalidRecord, "empty id", line);
  if (pair.question_id < kMinQuestion || pair.question_id > kMaxQuestion) {
    throw Error(ErrorCode::kInvalidRecord,
                fmt::format("record '{}' has question_id {}", pair.id, pair.question_id), line);
  }
  if (trim(pair.answer).empty()) {
    throw Error(ErrorCode::kInvalidRecord, fmt::format("record '{}' has an empty answer", pair.id),
                line);
  }
  if (pair.age_months && *pair.age_months < 0) {
    throw Error(ErrorCode::kInvalidRecord, fmt::format("record '{}' has negative age", pair.id),
                line);
  }
  const bool augmented = pair.source == Source::kAugmented;
  if (augmented != pair.parent_id.has_value() || augmented == pair.strategy_chain.empty()) {
    throw Error(ErrorCode::kInvalidRecord,
                fmt::format("record '{}': source, parent_id and strategy_chain disagree", pair.id),
                line);
  }
  if (pair.parent_id && pair.parent_id->empty()) {
    throw Error(ErrorCode::kInvalidRecord, fmt::format("record '{}': empty parent_id", pair.id),
                line);
  }
}

Corpus::Corpus(std::string name, std::vector<QAPair> records) : name_(std::move(name)) {
  records_.reserve(records.size());
  for (auto& r : records) add(std::move(r));
}

const QAPair* Corpus::find(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

void Corpus::add(QAPair pair) {
  validate_record(pair);
  if (by_id_.count(pair.id) != 0) {
    throw Error(ErrorCode::kDuplicateId, fmt::format("duplicate id '{}'", pair.id));
  }
  by_id_.emplace(pair.id, records_.size());
  records_.push_back(std::move(pair));
}

Corpus parse_corpus(std::string_view text, std::string name) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::kSchema, "missing header");
  if (join(rows.front().fields, ",") != kCorpusHeader) {
    throw Error(ErrorCode::kSchema, fmt::format("header must be '{}'", kCorpusHeader), 1);
  }
  Corpus corpus;
  corpus.set_name(std::move(name));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto line = row.line;
    if (row.fields.size() != 9) {
      throw Error(ErrorCode::kParse, fmt::format("expected 9 fields, got {}", row.fields.size()),
                  line);
    }
    const auto& f = row.fields;
    QAPair p;
    p.id = f[0];
    p.question_id = static_cast<int>(parse_int(f[1], "question_id", line));
    p.answer = f[2];
    p.label = static_cast<int>(parse_int(f[3], "label", line));
    if (!f[4].empty()) p.age_months = static_cast<int>(parse_int(f[4], "age_months", line));
    p.gender = parse_gender(f[5], line);
    p.source = parse_source(f[6], line);
    if (!f[7].empty()) p.parent_id = f[7];
    if (!f[8].empty()) p.strategy_chain = split(f[8], '+');
    validate_record(p, line);
    if (corpus.contains(p.id)) {
      throw Error(ErrorCode::kDuplicateId, fmt::format("duplicate id '{}'", p.id), line);
    }
    corpus.add(std::move(p));
  }
  return corpus;
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out(kCorpusHeader);
  out += '\n';
  for (const auto& p : corpus.records()) {
    out += csv_line({p.id, std::to_string(p.question_id), p.answer, std::to_string(p.label),
                     p.age_months ? std::to_string(*p.age_months) : std::string(),
                     std::string(to_string(p.gender)), std::string(to_string(p.source)),
                     p.parent_id.value_or(std::string()), join(p.strategy_chain, "+")});
  }
  return out;
}

Corpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path), path.stem().string());
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  write_file(path, serialize_corpus(corpus));
}

std::string BucketKey::str() const { return fmt::format("q{}-l{}", question_id, label); }

DemographicCell demographic_cell(const QAPair& pair) {
  return {pair.age_months ? *pair.age_months / 12 : -1, pair.gender};
}

std::size_t SubcorpusIndex::total() const {
  std::size_t n = 0;
  for (const auto& [key, members] : buckets) n += members.size();
  return n;
}

const std::vector<BucketMember>& SubcorpusIndex::bucket(const BucketKey& key) const {
  static const std::vector<BucketMember> kEmpty;
  const auto it = buckets.find(key);
  return it == buckets.end() ? kEmpty : it->second;
}

SubcorpusIndex index_subcorpora(const Corpus& corpus) {
  SubcorpusIndex index;
  for (const auto& p : corpus.records()) {
    if (p.is_augmented()) continue;
    index.buckets[{p.question_id, p.label}].push_back({p.id, demographic_cell(p)});
  }
  return index;
}

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::kBalancedPerLabel ? "balanced_per_label"
                                                 : "proportional_per_question";
}

SamplingMode parse_sampling_mode(std::string_view s) {
  if (s == "balanced_per_label") return SamplingMode::kBalancedPerLabel;
  if (s == "proportional_per_question") return SamplingMode::kProportionalPerQuestion;
  throw Error(ErrorCode::kConfig, fmt::format("unknown sampling mode '{}'", s));
}

std::vector<int> largest_remainder(int total, const std::vector<std::int64_t>& weights) {
  std::vector<int> out(weights.size(), 0);
  const std::int64_t sum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  if (sum <= 0 || total <= 0) return out;
  std::vector<std::int64_t> remainder(weights.size());
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const std::int64_t scaled = static_cast<std::int64_t>(total) * weights[i];
    out[i] = static_cast<int>(scaled / sum);
    remainder[i] = scaled % sum;
    assigned += out[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) ++out[order[i % order.size()]];
  return out;
}

namespace {

// Draws `quota` distinct members (quota <= size) stratified over demographic
// cells. Returns positions into `members`, ascending.
std::vector<std::size_t> draw_stratified(const std::vector<BucketMember>& members, int quota,
                                         Rng& rng) {
  std::map<DemographicCell, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < members.size(); ++i) cells[members[i].cell].push_back(i);
  std::vector<std::int64_t> sizes;
  for (const auto& [cell, positions] : cells) sizes.push_back(static_cast<std::int64_t>(positions.size()));
  const auto alloc = largest_remainder(quota, sizes);
  std::vector<std::size_t> chosen;
  std::size_t c = 0;
  for (auto& [cell, positions] : cells) {
    const auto take = static_cast<std::size_t>(alloc[c++]);
    // Partial Fisher-Yates: the first `take` slots become a uniform subset.
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(positions.size() - i));
      std::swap(positions[i], positions[j]);
      chosen.push_back(positions[i]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<std::string> sample_bucket(const BucketKey& key, const std::vector<BucketMember>& members,
                                       int quota, const SamplingConfig& config) {
  const auto size = static_cast<int>(members.size());
  if (quota > size && !config.allow_oversampling) {
    throw Error(ErrorCode::kInsufficientBucket,
                fmt::format("bucket {} has {} records, quota is {}", key.str(), size, quota));
  }
  std::vector<std::string> ids;
  if (quota <= 0 || size == 0) return ids;
  auto rng = substream(config.seed, "sample", key.str());
  const int copies = quota / size;
  const auto rest = draw_stratified(members, quota % size, rng);
  std::vector<int> multiplicity(members.size(), copies);
  for (auto pos : rest) ++multiplicity[pos];
  ids.reserve(static_cast<std::size_t>(quota));
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int m = 0; m < multiplicity[i]; ++m) ids.push_back(members[i].id);
  }
  return ids;
}

}  // namespace

BucketSample stratified_sample_buckets(const SubcorpusIndex& index, const SamplingConfig& config) {
  BucketSample out;
  if (config.mode == SamplingMode::kBalancedPerLabel) {
    if (config.quota_per_bucket <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "quota_per_bucket must be positive");
    }
    for (const auto& [key, members] : index.buckets) {
      out[key] = sample_bucket(key, members, config.quota_per_bucket, config);
    }
    return out;
  }
  if (config.per_question_total <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "per_question_total must be positive");
  }
  std::map<int, std::vector<BucketKey>> by_question;
  for (const auto& [key, members] : index.buckets) by_question[key.question_id].push_back(key);
  for (const auto& [question, keys] : by_question) {
    std::vector<std::int64_t> sizes;
    for (const auto& key : keys) sizes.push_back(static_cast<std::int64_t>(index.bucket(key).size()));
    const auto alloc = largest_remainder(config.per_question_total, sizes);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out[keys[i]] = sample_bucket(keys[i], index.bucket(keys[i]), alloc[i], config);
    }
  }
  return out;
}

std::vector<std::string> stratified_sample(const SubcorpusIndex& index, const SamplingConfig& config) {
  std::vector<std::string> ids;
  for (auto& [key, bucket_ids] : stratified_sample_buckets(index, config)) {
    ids.insert(ids.end(), bucket_ids.begin(), bucket_ids.end());
  }
  return ids;
}

}  // namespace qaaug
