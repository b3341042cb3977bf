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

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <doctest.h>

#include "qaaug/augment.hpp"
#include "qaaug/corpus.hpp"
#include "qaaug/error.hpp"

namespace qaaug::test {

inline QAPair pair(std::string id, int q, std::string answer, int label) {
  QAPair p;
  p.id = std::move(id);
  p.question_id = q;
  p.answer = std::move(answer);
  p.label = label;
  return p;
}

inline QAPair child(std::string id, const QAPair& parent, std::string answer, std::vector<std::string> chain) {
  QAPair p = parent;
  p.id = std::move(id);
  p.answer = std::move(answer);
  p.source = Source::kAugmented;
  p.parent_id = parent.id;
  p.strategy_chain = std::move(chain);
  return p;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("qaaug-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(QAAUG_FIXTURE_DIR) / name;
}

// All six resources from fixtures/resources, loaded once per process.
inline const AugmentResources& fixture_resources() {
  static const AugmentResources kResources = [] {
    const auto dir = fixture("resources");
    AugmentResources r;
    r.dictionary = std::make_shared<ContextualSynonymDictionary>(
        load_synonym_dictionary(dir / "dictionary.tsv"));
    r.phrases = std::make_shared<PhraseInventory>(load_phrase_inventory(dir / "phrases.txt"));
    r.wordnet = std::make_shared<SynonymLexicon>(load_synonym_lexicon(dir / "wordnet.tsv"));
    r.ppdb = std::make_shared<SynonymLexicon>(load_synonym_lexicon(dir / "ppdb.tsv"));
    r.glove = std::make_shared<EmbeddingNeighbors>(
        std::make_shared<EmbeddingTable>(load_embedding_table(dir / "glove.txt")));
    r.fasttext = std::make_shared<EmbeddingNeighbors>(
        std::make_shared<EmbeddingTable>(load_embedding_table(dir / "fasttext.vec")));
    return r;
  }();
  return kResources;
}

template <typename F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace qaaug::test

#define CHECK_ERROR(expr, code) CHECK(::qaaug::test::error_of([&] { (void)(expr); }) == std::optional<::qaaug::ErrorCode>(code))
