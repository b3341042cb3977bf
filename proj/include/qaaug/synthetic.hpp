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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qaaug/corpus.hpp"
#include "qaaug/rng.hpp"
#include "qaaug/text_io.hpp"

namespace qaaug {

// Slot-filling templates for synthetic answers.
//
// File format:
//   [pool NAME]           entries for {NAME}; NAME@Q is the variant used
//                         by question Q and wins over plain NAME
//   [template Q L]        answer templates for question Q (or * for every
//                         question) and label L
// Entries may start with a weight, "4* text". Inside an entry, {name}
// expands a pool and (a*3|b|c) picks one inline alternative. Inline
// groups are the synonym sets the bundled resources are derived from.
class TemplateSet {
 public:
  struct Entry {
    std::uint32_t weight = 1;
    std::string text;
  };

  static TemplateSet parse(std::string_view text);
  static TemplateSet load(const std::filesystem::path& path);
  static const TemplateSet& builtin();

  bool has_templates(const BucketKey& key) const;
  std::string generate(const BucketKey& key, Rng& rng) const;

  // Every inline alternative group reachable from a bucket's templates.
  std::vector<std::vector<std::string>> synonym_groups(int question_id) const;
  std::vector<int> questions() const;

 private:
  std::vector<Entry> templates_for(const BucketKey& key) const;
  std::string expand(std::string_view text, int question_id, Rng& rng, int depth) const;
  const std::vector<Entry>* pool(std::string_view name, int question_id) const;
  void collect_groups(std::string_view text, int question_id, int depth,
                      std::vector<std::vector<std::string>>& out) const;

  std::map<std::string, std::vector<Entry>, std::less<>> pools_;
  std::map<std::pair<int, int>, std::vector<Entry>> templates_;  // question 0 = any
};

struct GeneratorConfig {
  std::string name = "synthetic";
  std::string id_prefix = "s";
  std::map<BucketKey, int> counts;
  double label_noise = 0.0;
  std::uint64_t seed = 0;
  int age_min_months = 84;
  int age_max_months = 179;
  double age_missing_rate = 0.0;
  // Relative weights for female, male, undisclosed.
  double gender_weights[3] = {55.0, 44.0, 1.0};
  std::filesystem::path template_path;  // empty: builtin templates
};

// Every bucket of questions 1..11 x labels 0..2 gets `per_bucket` records.
std::map<BucketKey, int> uniform_counts(int per_bucket);

// Keys: name, id_prefix, seed, label_noise, count (default per bucket),
// count.qQ.lL overrides, age_min_months, age_max_months, age_missing_rate,
// gender.female|male|undisclosed, templates (path, relative to the file).
GeneratorConfig parse_generator_config(const KeyValueFile& kv,
                                       const std::filesystem::path& base_dir = {});

Corpus generate_synthetic(const GeneratorConfig& config);
Corpus generate_synthetic(const GeneratorConfig& config, const TemplateSet& templates);

// Augmentation resources consistent with the template vocabulary:
// dictionary.tsv, phrases.txt, wordnet.tsv, ppdb.tsv, glove.txt and
// fasttext.vec. The lexicons and embeddings mix true synonyms with
// unrelated words, the way general-purpose resources do.
void write_fixture_resources(const TemplateSet& templates, const std::filesystem::path& dir,
                             std::uint64_t seed);

}  // namespace qaaug
