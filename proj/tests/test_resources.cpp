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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qaaug/resources.hpp"
#include "qaaug/rng.hpp"
#include "qaaug/synthetic.hpp"
#include "qaaug/text_io.hpp"
#include "qaaug/tokenize.hpp"
#include "support.hpp"

using namespace qaaug;

// ---------------------------------------------------------------------------
// Tokenizer

TEST_CASE("tokenizer rules") {
  CHECK(tokenize("I think that's right.").tokens ==
        std::vector<std::string>{"i", "think", "that's", "right", "."});
  CHECK(tokenize("so telling does'nt get told his .").size() == 7);
  CHECK(tokenize("(Well), OK!?").tokens == std::vector<std::string>{"(", "well", ")", ",", "ok", "!", "?"});
  CHECK(tokenize("   ").empty());
}

TEST_CASE("detokenize inverts tokenize up to case and spacing") {
  const char* samples[] = {"I think that's right.", "  The MEN   hid,  quickly!", "so telling does'nt get told his .",
                           "\"quoted\" (words) here...", "a", "x -- y"};
  for (const char* s : samples) CHECK(detokenize(tokenize(s)) == normalize_whitespace(s));

  // Random strings over a small alphabet with punctuation and spaces.
  const std::string alphabet = "abC' .,!?\"()-\t";
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const auto len = 1 + rng.below(20);
    for (std::uint64_t j = 0; j < len; ++j) s += alphabet[rng.below(alphabet.size())];
    CHECK_MESSAGE(detokenize(tokenize(s)) == normalize_whitespace(s), s);
  }
}

// ---------------------------------------------------------------------------
// Contextual dictionary

TEST_CASE("dictionary lookups are per question") {
  const auto d = parse_synonym_dictionary("1\tmen\tburglars\n");
  REQUIRE(d.lookup(1, "men") != nullptr);
  CHECK(*d.lookup(1, "men") == std::vector<std::string>{"burglars"});
  CHECK(d.lookup(2, "men") == nullptr);
}

TEST_CASE("empty dictionary") {
  const auto d = parse_synonym_dictionary("");
  CHECK(d.empty());
  CHECK(d.lookup(1, "men") == nullptr);
}

TEST_CASE("dictionary size report") {
  std::string text;
  int syn = 0;
  for (int h = 0; h < 148; ++h) {
    const int n = h < 34 ? 5 : 4;  // 34*5 + 114*4 = 626
    std::vector<std::string> s;
    for (int i = 0; i < n; ++i) s.push_back("s" + std::to_string(syn++));
    text += std::to_string(1 + h % 11) + "\th" + std::to_string(h) + "\t" + join(s, "|") + "\n";
  }
  const auto d = parse_synonym_dictionary(text);
  CHECK(d.head_count() == 148);
  CHECK(d.synonym_count() == 626);
}

TEST_CASE("dictionary rejects a synonym equal to its head") {
  try {
    parse_synonym_dictionary("1\tmen\tburglars\n2\tcat\tkitty|Cat\n");
    FAIL("expected SynonymEqualsHead");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSynonymEqualsHead);
    CHECK(e.line() == 2);
  }
  CHECK_ERROR(parse_synonym_dictionary("x\tmen\tburglars\n"), ErrorCode::kParse);
  CHECK_ERROR(parse_synonym_dictionary("1\tmen\n"), ErrorCode::kParse);
}

TEST_CASE("dictionary drops duplicate synonyms") {
  const auto d = parse_synonym_dictionary("1\tmen\tburglars|Burglars|thieves\n");
  CHECK(*d.lookup(1, "men") == std::vector<std::string>{"burglars", "thieves"});
}

// ---------------------------------------------------------------------------
// Phrase inventory

TEST_CASE("phrase inventory cross product") {
  SUBCASE("15 phrases and 4 variants") {
    std::string text = "[phrases]\n";
    for (int i = 0; i < 15; ++i) text += "phrase " + std::to_string(i) + "\n";
    text += "[conjunctions]\n-\nthat\nmaybe\nprobably\n";
    const auto inv = parse_phrase_inventory(text);
    CHECK(inv.base_phrases.size() == 15);
    CHECK(inv.expanded.size() == 60);
    CHECK(std::set<std::string>(inv.expanded.begin(), inv.expanded.end()).size() == 60);
  }
  SUBCASE("one phrase, empty conjunction") {
    const auto inv = parse_phrase_inventory("[phrases]\nI Think\n[conjunctions]\n-\n");
    CHECK(inv.expanded == std::vector<std::string>{"i think"});
  }
  SUBCASE("2 x 3") {
    const auto inv = make_phrase_inventory({"i think", "i guess"}, {"", "that", "maybe"});
    CHECK(inv.expanded == std::vector<std::string>{"i think", "i think that", "i think maybe", "i guess",
                                                   "i guess that", "i guess maybe"});
  }
  SUBCASE("empty phrase section") {
    CHECK_ERROR(parse_phrase_inventory("[phrases]\n[conjunctions]\nthat\n"), ErrorCode::kEmptySection);
  }
  SUBCASE("bundled fixture realises 60 forms") {
    const auto inv = load_phrase_inventory(qaaug::test::fixture("resources/phrases.txt"));
    CHECK(inv.base_phrases.size() == 15);
    CHECK(inv.conjunctions.size() == 4);
    CHECK(inv.expanded.size() == 60);
  }
}

// ---------------------------------------------------------------------------
// Lexicons

TEST_CASE("lexicon parsing") {
  const auto lex = parse_synonym_lexicon("happy\tglad|content\n");
  REQUIRE(lex.lookup("happy") != nullptr);
  CHECK(*lex.lookup("happy") == std::vector<std::string>{"glad", "content"});
  CHECK(lex.lookup("sad") == nullptr);

  LoadStats stats;
  const auto dup = parse_synonym_lexicon("hid\tconcealed|hid\nhid\tran away\n", &stats);
  CHECK(*dup.lookup("hid") == std::vector<std::string>{"ran away"});
  CHECK(stats.duplicate_words == 1);
  CHECK(stats.dropped_entries == 1);
}

// ---------------------------------------------------------------------------
// Embeddings

TEST_CASE("embedding tables") {
  SUBCASE("dimension mismatch") {
    try {
      parse_embedding_table("a 1 2 3\nb 1 2 3 4\n");
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDimensionMismatch);
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("non-numeric component") {
    CHECK_ERROR(parse_embedding_table("a 1 x\n"), ErrorCode::kNonNumeric);
  }
  SUBCASE("counts") {
    const auto t = parse_embedding_table("a 1 0\nb 0.9 0.1\nc 0 1\n");
    CHECK(t.dimension() == 2);
    CHECK(t.size() == 3);
  }
  SUBCASE("fastText header and zero rows") {
    LoadStats stats;
    const auto t = parse_embedding_table("3 2\na 1 0\nz 0 0\nc 0 1\n", &stats);
    CHECK(t.size() == 2);
    CHECK_FALSE(t.contains("z"));
    CHECK(stats.dropped_entries == 1);
  }
}

TEST_CASE("nearest neighbours") {
  const auto t = parse_embedding_table("a 1 0\nb 0.9 0.1\nc 0 1\n");
  const auto nn = nearest_neighbors(t, "a", 1);
  REQUIRE(nn.size() == 1);
  CHECK(nn[0].word == "b");
  CHECK(nn[0].similarity == doctest::Approx(0.9 / std::sqrt(0.82)).epsilon(1e-12));
  CHECK_ERROR(nearest_neighbors(t, "zz", 1), ErrorCode::kOutOfVocabulary);
  const auto all = nearest_neighbors(t, "a", 10);
  REQUIRE(all.size() == 2);
  CHECK(all[0].word == "b");
  CHECK(all[1].word == "c");
}

TEST_CASE("nearest neighbours match a brute-force ranking") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    EmbeddingTable t(4);
    const int n = 3 + static_cast<int>(rng.below(20));
    for (int i = 0; i < n; ++i) {
      std::vector<double> v(4);
      // Small integer grid so exact ties happen.
      for (auto& x : v) x = static_cast<double>(rng.below(5)) - 2.0;
      t.set("w" + std::to_string(i), v);
    }
    if (t.size() < 2) continue;
    const auto& query = t.word(rng.below(t.size()));
    const std::size_t k = 1 + rng.below(6);
    std::vector<Neighbor> brute;
    const auto& qv = t.vector(*t.index_of(query));
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (t.word(r) == query) continue;
      double dot = 0, na = 0, nb = 0;
      for (int d = 0; d < 4; ++d) {
        dot += qv[d] * t.vector(r)[d];
        na += qv[d] * qv[d];
        nb += t.vector(r)[d] * t.vector(r)[d];
      }
      brute.push_back({t.word(r), dot / std::sqrt(na * nb)});
    }
    std::sort(brute.begin(), brute.end(), [](const Neighbor& a, const Neighbor& b) {
      if (std::fabs(a.similarity - b.similarity) > 1e-12) return a.similarity > b.similarity;
      return a.word < b.word;
    });
    brute.resize(std::min(k, brute.size()));
    const auto got = nearest_neighbors(t, query, k);
    REQUIRE(got.size() == brute.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].word == brute[i].word);
      CHECK(got[i].similarity == doctest::Approx(brute[i].similarity).epsilon(1e-12));
      CHECK(got[i].similarity <= 1.0 + 1e-12);
      if (i > 0) CHECK(got[i].similarity <= got[i - 1].similarity);
    }
    CHECK(cosine_similarity(qv, qv) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

// ---------------------------------------------------------------------------
// Top words

TEST_CASE("top words") {
  Corpus c;
  c.add(qaaug::test::pair("1", 1, "the man ran", 0));
  c.add(qaaug::test::pair("2", 1, "the man hid.", 1));
  c.add(qaaug::test::pair("3", 2, "zebra", 1));
  // "the" and "man" tie at two; the tie goes to the lexicographically smaller.
  const auto top = extract_top_words(c, 1, 2);
  CHECK(top.words == std::vector<std::string>{"man", "the"});
  CHECK(top.counts == std::vector<std::size_t>{2, 2});
  CHECK_FALSE(top.short_list);
  CHECK(extract_top_words(c, 2, 1).words == std::vector<std::string>{"zebra"});
  const auto all = extract_top_words(c, 1, 10);
  CHECK(all.short_list);
  CHECK(all.words == std::vector<std::string>{"man", "the", "hid", "ran"});
  CHECK(extract_top_words(c, 1, 1, &bundled_stopwords()).words == std::vector<std::string>{"man"});
}

TEST_CASE("top words agree with a brute-force counter") {
  const auto corpus = load_corpus(qaaug::test::fixture("cv_base.csv"));
  std::size_t total = 0;
  for (int q = 1; q <= 11; ++q) {
    std::map<std::string, std::size_t> counts;
    for (const auto& r : corpus.records()) {
      if (r.question_id != q) continue;
      for (const auto& t : tokenize(r.answer).tokens) {
        if (!is_punctuation_token(t)) ++counts[t];
      }
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](auto& a, auto& b) { return a.second > b.second; });
    const auto top = extract_top_words(corpus, q, 20);
    REQUIRE(top.words.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
      CHECK(top.words[i] == ranked[i].first);
      CHECK(top.counts[i] == ranked[i].second);
    }
    total += top.words.size();
  }
  CHECK(total <= 220);
}

// ---------------------------------------------------------------------------
// Fixture resources follow the generator vocabulary

TEST_CASE("fixture resources load and are consistent") {
  const auto dir = qaaug::test::fixture("resources");
  const auto dict = load_synonym_dictionary(dir / "dictionary.tsv");
  CHECK(dict.head_count() > 100);
  REQUIRE(dict.lookup(1, "men") != nullptr);
  const auto& men = *dict.lookup(1, "men");
  CHECK(std::find(men.begin(), men.end(), "burglars") != men.end());
  CHECK(load_synonym_lexicon(dir / "wordnet.tsv").size() > 50);
  CHECK(load_synonym_lexicon(dir / "ppdb.tsv").size() > 50);
  const auto glove = load_embedding_table(dir / "glove.txt");
  const auto fasttext = load_embedding_table(dir / "fasttext.vec");
  CHECK(glove.dimension() == 24);
  CHECK(fasttext.dimension() == 24);
  CHECK(glove.contains("burglars"));
}

TEST_CASE("fixture resource writer is deterministic") {
  qaaug::test::TempDir a("res"), b("res");
  write_fixture_resources(TemplateSet::builtin(), a.path(), 5);
  write_fixture_resources(TemplateSet::builtin(), b.path(), 5);
  for (const char* f : {"dictionary.tsv", "phrases.txt", "wordnet.tsv", "ppdb.tsv", "glove.txt", "fasttext.vec"}) {
    CHECK(read_file(a / f) == read_file(b / f));
  }
}
