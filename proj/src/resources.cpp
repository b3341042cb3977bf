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

#include "qaaug/resources.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/text_io.hpp"
#include "qaaug/tokenize.hpp"

namespace qaaug {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto t = trim(line);
    if (!t.empty() && t.front() != '#') lines.push_back({number, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> parse_alternatives(std::string_view field) {
  std::vector<std::string> out;
  for (const auto& item : split(field, '|')) {
    auto t = normalize_whitespace(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

void push_unique(std::vector<std::string>& list, std::string value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(std::move(value));
}

}  // namespace

void ContextualSynonymDictionary::add(int question_id, std::string_view word,
                                      const std::vector<std::string>& synonyms) {
  auto head = normalize_whitespace(word);
  auto& list = entries_[{question_id, head}];
  for (const auto& s : synonyms) {
    auto syn = normalize_whitespace(s);
    if (syn.empty()) continue;
    if (syn == head) {
      throw Error(ErrorCode::kSynonymEqualsHead,
                  fmt::format("synonym '{}' equals its head word (question {})", syn, question_id));
    }
    push_unique(list, std::move(syn));
  }
  if (list.empty()) entries_.erase({question_id, head});
}

const std::vector<std::string>* ContextualSynonymDictionary::lookup(int question_id,
                                                                    std::string_view word) const {
  const auto it = entries_.find(std::pair<int, std::string>(question_id, std::string(word)));
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t ContextualSynonymDictionary::synonym_count() const {
  std::size_t n = 0;
  for (const auto& [key, list] : entries_) n += list.size();
  return n;
}

ContextualSynonymDictionary parse_synonym_dictionary(std::string_view text) {
  ContextualSynonymDictionary dict;
  for (const auto& [number, line] : content_lines(text)) {
    const auto fields = split(line, '\t');
    if (fields.size() != 3 || trim(fields[1]).empty()) {
      throw Error(ErrorCode::kParse, "expected 'question_id<TAB>word<TAB>syn1|syn2|...'", number);
    }
    const auto question = static_cast<int>(parse_int(fields[0], "question_id", number));
    const auto synonyms = parse_alternatives(fields[2]);
    if (synonyms.empty()) throw Error(ErrorCode::kParse, "no synonyms listed", number);
    try {
      dict.add(question, fields[1], synonyms);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("synonym repeats head word '{}'", trim(fields[1])), number);
    }
  }
  return dict;
}

ContextualSynonymDictionary load_synonym_dictionary(const std::filesystem::path& path) {
  return parse_synonym_dictionary(read_file(path));
}

PhraseInventory make_phrase_inventory(std::vector<std::string> phrases,
                                      std::vector<std::string> conjunctions) {
  PhraseInventory inv;
  for (const auto& p : phrases) {
    auto t = normalize_whitespace(p);
    if (!t.empty()) push_unique(inv.base_phrases, std::move(t));
  }
  if (inv.base_phrases.empty()) throw Error(ErrorCode::kEmptySection, "no phrases");
  for (const auto& c : conjunctions) push_unique(inv.conjunctions, normalize_whitespace(c));
  if (inv.conjunctions.empty()) inv.conjunctions.emplace_back();
  for (const auto& p : inv.base_phrases) {
    for (const auto& c : inv.conjunctions) push_unique(inv.expanded, c.empty() ? p : p + " " + c);
  }
  return inv;
}

PhraseInventory parse_phrase_inventory(std::string_view text) {
  std::vector<std::string> phrases;
  std::vector<std::string> conjunctions;
  std::vector<std::string>* section = nullptr;
  for (const auto& [number, line] : content_lines(text)) {
    const auto t = trim(line);
    if (t == "[phrases]") {
      section = &phrases;
    } else if (t == "[conjunctions]") {
      section = &conjunctions;
    } else if (t.front() == '[') {
      throw Error(ErrorCode::kParse, fmt::format("unknown section '{}'", t), number);
    } else if (section == nullptr) {
      throw Error(ErrorCode::kParse, "entry before any section header", number);
    } else {
      section->emplace_back(t == "-" ? std::string() : std::string(t));
    }
  }
  if (phrases.empty()) throw Error(ErrorCode::kEmptySection, "[phrases] section is empty");
  return make_phrase_inventory(std::move(phrases), std::move(conjunctions));
}

PhraseInventory load_phrase_inventory(const std::filesystem::path& path) {
  return parse_phrase_inventory(read_file(path));
}

void SynonymLexicon::set(std::string_view word, const std::vector<std::string>& replacements) {
  const auto head = normalize_whitespace(word);
  std::vector<std::string> list;
  for (const auto& r : replacements) {
    auto t = normalize_whitespace(r);
    if (!t.empty() && t != head) push_unique(list, std::move(t));
  }
  if (list.empty()) {
    entries_.erase(head);
  } else {
    entries_[head] = std::move(list);
  }
}

const std::vector<std::string>* SynonymLexicon::lookup(std::string_view word) const {
  const auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

SynonymLexicon parse_synonym_lexicon(std::string_view text, LoadStats* stats) {
  SynonymLexicon lex;
  LoadStats local;
  for (const auto& [number, line] : content_lines(text)) {
    const auto fields = split(line, '\t');
    if (fields.size() != 2 || trim(fields[0]).empty()) {
      throw Error(ErrorCode::kParse, "expected 'word<TAB>syn1|syn2|...'", number);
    }
    const auto head = normalize_whitespace(fields[0]);
    auto alternatives = parse_alternatives(fields[1]);
    if (lex.lookup(head) != nullptr) ++local.duplicate_words;
    const auto before = alternatives.size();
    alternatives.erase(std::remove(alternatives.begin(), alternatives.end(), head), alternatives.end());
    local.dropped_entries += before - alternatives.size();
    lex.set(head, alternatives);
  }
  if (stats != nullptr) *stats = local;
  return lex;
}

SynonymLexicon load_synonym_lexicon(const std::filesystem::path& path, LoadStats* stats) {
  return parse_synonym_lexicon(read_file(path), stats);
}

bool EmbeddingTable::set(std::string_view word, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("vector for '{}' has {} components, table has {}", word,
                            vector.size(), dimension_));
  }
  double sq = 0.0;
  for (double v : vector) sq += v * v;
  if (!(sq > 0.0) || !std::isfinite(sq)) return false;
  const auto it = index_.find(word);
  if (it != index_.end()) {
    vectors_[it->second] = std::move(vector);
    norms_[it->second] = std::sqrt(sq);
    return true;
  }
  index_.emplace(std::string(word), words_.size());
  words_.emplace_back(word);
  vectors_.push_back(std::move(vector));
  norms_.push_back(std::sqrt(sq));
  return true;
}

std::optional<std::size_t> EmbeddingTable::index_of(std::string_view word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingTable parse_embedding_table(std::string_view text, LoadStats* stats) {
  LoadStats local;
  std::optional<EmbeddingTable> table;
  bool first = true;
  for (const auto& [number, line] : content_lines(text)) {
    std::vector<std::string> parts;
    for (auto& p : split(trim(line), ' ')) {
      if (!p.empty()) parts.push_back(std::move(p));
    }
    if (first) {
      first = false;
      if (parts.size() == 2 && parts[0].find_first_not_of("0123456789") == std::string::npos &&
          parts[1].find_first_not_of("0123456789") == std::string::npos) {
        continue;  // `count dim` header
      }
    }
    if (parts.size() < 2) throw Error(ErrorCode::kParse, "expected 'word v1 ... vd'", number);
    const std::size_t dim = parts.size() - 1;
    if (!table) table.emplace(dim);
    if (dim != table->dimension()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("expected {} components, found {}", table->dimension(), dim), number);
    }
    std::vector<double> vec(dim);
    for (std::size_t i = 0; i < dim; ++i) vec[i] = parse_double(parts[i + 1], "component", number);
    const auto word = to_lower(parts[0]);
    if (table->contains(word)) ++local.duplicate_words;
    if (!table->set(word, std::move(vec))) ++local.dropped_entries;
  }
  if (stats != nullptr) *stats = local;
  return table ? std::move(*table) : EmbeddingTable(0);
}

EmbeddingTable load_embedding_table(const std::filesystem::path& path, LoadStats* stats) {
  return parse_embedding_table(read_file(path), stats);
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

std::vector<Neighbor> nearest_neighbors(const EmbeddingTable& table, std::string_view word,
                                        std::size_t k) {
  const auto query = table.index_of(word);
  if (!query) throw Error(ErrorCode::kOutOfVocabulary, fmt::format("'{}' not in table", word));
  const auto& q = table.vector(*query);
  const double qn = table.norm(*query);
  std::vector<Neighbor> all;
  all.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (r == *query) continue;
    const auto& v = table.vector(r);
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += q[i] * v[i];
    all.push_back({table.word(r), std::clamp(dot / (qn * table.norm(r)), -1.0, 1.0)});
  }
  const auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.word < b.word;
  };
  const auto take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), better);
  all.resize(take);
  return all;
}

const std::set<std::string, std::less<>>& bundled_stopwords() {
  static const std::set<std::string, std::less<>> kWords = {
      "a",    "an",   "and",  "are",   "as",   "at",   "be",    "but",  "by",   "for",
      "from", "he",   "her",  "his",   "i",    "if",   "in",    "is",   "it",   "its",
      "of",   "on",   "or",   "she",   "so",   "that", "the",   "their", "them", "then",
      "they", "this", "to",   "was",   "we",   "were", "with",  "you",  "him",  "had",
      "has",  "have", "did",  "do",    "does", "not",  "there", "what", "when", "who"};
  return kWords;
}

TopWords extract_top_words(const Corpus& corpus, int question_id, std::size_t k,
                           const std::set<std::string, std::less<>>* stopwords) {
  std::unordered_map<std::string, std::size_t> counts;
  bool seen_question = false;
  for (const auto& p : corpus.records()) {
    if (p.question_id != question_id) continue;
    seen_question = true;
    for (auto& tok : tokenize(p.answer).tokens) {
      if (is_punctuation_token(tok)) continue;
      if (stopwords != nullptr && stopwords->count(tok) != 0) continue;
      ++counts[tok];
    }
  }
  if (!seen_question) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("corpus has no records for question {}", question_id));
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  TopWords out;
  out.short_list = ranked.size() < k;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
    out.words.push_back(ranked[i].first);
    out.counts.push_back(ranked[i].second);
  }
  return out;
}

}  // namespace qaaug
