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
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaaug/corpus.hpp"

namespace qaaug {

// Question-specific synonyms proposed by domain annotators. A synonym is
// only valid in the context of the question it is listed under.
class ContextualSynonymDictionary {
 public:
  // Lowercases both sides; drops duplicate synonyms. Throws
  // SynonymEqualsHead when a synonym repeats its head word.
  void add(int question_id, std::string_view word, const std::vector<std::string>& synonyms);

  // nullptr on a miss.
  const std::vector<std::string>* lookup(int question_id, std::string_view word) const;

  std::size_t head_count() const { return entries_.size(); }
  std::size_t synonym_count() const;
  bool empty() const { return entries_.empty(); }
  const std::map<std::pair<int, std::string>, std::vector<std::string>, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::pair<int, std::string>, std::vector<std::string>, std::less<>> entries_;
};

// `question_id<TAB>word<TAB>syn1|syn2|...`; blank lines and '#' comments
// are skipped.
ContextualSynonymDictionary parse_synonym_dictionary(std::string_view text);
ContextualSynonymDictionary load_synonym_dictionary(const std::filesystem::path& path);

struct PhraseInventory {
  std::vector<std::string> base_phrases;
  std::vector<std::string> conjunctions;  // "" is the empty conjunction
  std::vector<std::string> expanded;      // phrase-major cross product
};

PhraseInventory make_phrase_inventory(std::vector<std::string> phrases,
                                      std::vector<std::string> conjunctions);

// `[phrases]` and `[conjunctions]` sections, one entry per line; `-` is the
// empty conjunction. A missing conjunction section means the empty one only.
PhraseInventory parse_phrase_inventory(std::string_view text);
PhraseInventory load_phrase_inventory(const std::filesystem::path& path);

struct LoadStats {
  std::size_t duplicate_words = 0;  // later lines replaced earlier ones
  std::size_t dropped_entries = 0;  // head-word synonyms, zero vectors
};

// WordNet- or PPDB-style flat synonym lists.
class SynonymLexicon {
 public:
  void set(std::string_view word, const std::vector<std::string>& replacements);
  const std::vector<std::string>* lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

// `word<TAB>syn1|syn2|...`
SynonymLexicon parse_synonym_lexicon(std::string_view text, LoadStats* stats = nullptr);
SynonymLexicon load_synonym_lexicon(const std::filesystem::path& path, LoadStats* stats = nullptr);

// Word vectors in GloVe text format. Rows are kept in first-seen order;
// all share one dimension and none has zero norm.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension = 0) : dimension_(dimension) {}

  // Replaces an existing row. Returns false (and stores nothing) for a
  // zero-norm vector.
  bool set(std::string_view word, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  bool contains(std::string_view word) const { return index_.find(word) != index_.end(); }
  std::optional<std::size_t> index_of(std::string_view word) const;
  const std::string& word(std::size_t row) const { return words_[row]; }
  const std::vector<double>& vector(std::size_t row) const { return vectors_[row]; }
  double norm(std::size_t row) const { return norms_[row]; }

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<std::vector<double>> vectors_;
  std::vector<double> norms_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Dimension comes from the first data line; a leading `count dim` header
// line (fastText .vec) is skipped.
EmbeddingTable parse_embedding_table(std::string_view text, LoadStats* stats = nullptr);
EmbeddingTable load_embedding_table(const std::filesystem::path& path, LoadStats* stats = nullptr);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

struct Neighbor {
  std::string word;
  double similarity = 0.0;
  bool operator==(const Neighbor&) const = default;
};

// Top-k other words by cosine similarity, ties broken lexicographically.
// Throws OutOfVocabulary.
std::vector<Neighbor> nearest_neighbors(const EmbeddingTable& table, std::string_view word,
                                        std::size_t k);

struct TopWords {
  std::vector<std::string> words;
  std::vector<std::size_t> counts;
  bool short_list = false;  // fewer than k distinct words were available
};

const std::set<std::string, std::less<>>& bundled_stopwords();

// Most frequent word tokens in one question's answers; punctuation tokens
// are not counted.
TopWords extract_top_words(const Corpus& corpus, int question_id, std::size_t k,
                           const std::set<std::string, std::less<>>* stopwords = nullptr);

}  // namespace qaaug
