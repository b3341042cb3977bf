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

#include "qaaug/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/tokenize.hpp"

namespace qaaug {

namespace detail {
extern const char* const kBuiltinTemplates;
}

namespace {

constexpr int kMaxDepth = 8;

TemplateSet::Entry parse_entry(std::string_view line, std::size_t number) {
  TemplateSet::Entry e;
  const auto star = line.find("* ");
  if (star != std::string_view::npos && star > 0 &&
      line.substr(0, star).find_first_not_of("0123456789") == std::string_view::npos) {
    e.weight = static_cast<std::uint32_t>(parse_int(line.substr(0, star), "weight", number));
    line = trim(line.substr(star + 1));
  }
  if (e.weight == 0) throw Error(ErrorCode::kParse, "zero weight", number);
  e.text = std::string(line);
  return e;
}

struct Alternative {
  std::string text;
  std::uint32_t weight = 1;
};

std::vector<Alternative> parse_group(std::string_view body) {
  std::vector<Alternative> alts;
  for (const auto& raw : split(body, '|')) {
    Alternative a;
    std::string_view t = trim(raw);
    const auto star = t.rfind('*');
    if (star != std::string_view::npos && star + 1 < t.size() &&
        t.substr(star + 1).find_first_not_of("0123456789") == std::string_view::npos) {
      a.weight = static_cast<std::uint32_t>(parse_int(t.substr(star + 1), "weight"));
      t = trim(t.substr(0, star));
    }
    a.text = std::string(t);
    if (!a.text.empty() && a.weight > 0) alts.push_back(std::move(a));
  }
  if (alts.empty()) throw Error(ErrorCode::kParse, fmt::format("empty group '({})'", body));
  return alts;
}

template <typename T>
const T& weighted_pick(const std::vector<T>& items, Rng& rng) {
  std::uint64_t total = 0;
  for (const auto& i : items) total += i.weight;
  auto r = rng.below(total);
  for (const auto& i : items) {
    if (r < i.weight) return i;
    r -= i.weight;
  }
  return items.back();
}

}  // namespace

TemplateSet TemplateSet::parse(std::string_view text) {
  TemplateSet set;
  std::vector<Entry>* section = nullptr;
  std::size_t number = 0;
  for (const auto& raw : split(text, '\n')) {
    ++number;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::kParse, "unterminated section header", number);
      std::vector<std::string> parts;
      for (auto& p : split(line.substr(1, line.size() - 2), ' ')) {
        if (!p.empty()) parts.push_back(std::move(p));
      }
      if (parts.size() == 2 && parts[0] == "pool") {
        section = &set.pools_[parts[1]];
      } else if (parts.size() == 3 && parts[0] == "template") {
        const int q = parts[1] == "*" ? 0 : static_cast<int>(parse_int(parts[1], "question", number));
        const int l = static_cast<int>(parse_int(parts[2], "label", number));
        section = &set.templates_[{q, l}];
      } else {
        throw Error(ErrorCode::kParse, fmt::format("bad section header '{}'", line), number);
      }
      continue;
    }
    if (section == nullptr) throw Error(ErrorCode::kParse, "entry before any section", number);
    section->push_back(parse_entry(line, number));
  }
  return set;
}

TemplateSet TemplateSet::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet kSet = parse(detail::kBuiltinTemplates);
  return kSet;
}

std::vector<TemplateSet::Entry> TemplateSet::templates_for(const BucketKey& key) const {
  std::vector<Entry> out;
  if (auto it = templates_.find({key.question_id, key.label}); it != templates_.end()) {
    out = it->second;
  }
  if (auto it = templates_.find({0, key.label}); it != templates_.end()) {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

bool TemplateSet::has_templates(const BucketKey& key) const {
  if (templates_for(key).empty()) return false;
  // Every referenced pool must resolve for this question.
  try {
    std::vector<std::vector<std::string>> groups;
    for (const auto& e : templates_for(key)) collect_groups(e.text, key.question_id, 0, groups);
  } catch (const Error&) {
    return false;
  }
  return true;
}

const std::vector<TemplateSet::Entry>* TemplateSet::pool(std::string_view name,
                                                         int question_id) const {
  if (auto it = pools_.find(fmt::format("{}@{}", name, question_id)); it != pools_.end()) {
    return &it->second;
  }
  if (auto it = pools_.find(name); it != pools_.end()) return &it->second;
  return nullptr;
}

std::string TemplateSet::expand(std::string_view text, int question_id, Rng& rng, int depth) const {
  if (depth > kMaxDepth) throw Error(ErrorCode::kParse, "template expansion too deep");
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '{' || c == '(') {
      const char close = c == '{' ? '}' : ')';
      const auto end = text.find(close, i);
      if (end == std::string_view::npos) {
        throw Error(ErrorCode::kParse, fmt::format("unbalanced '{}' in '{}'", c, text));
      }
      const auto body = text.substr(i + 1, end - i - 1);
      if (c == '{') {
        const auto* entries = pool(body, question_id);
        if (entries == nullptr || entries->empty()) {
          throw Error(ErrorCode::kMissingTemplate,
                      fmt::format("no pool '{}' for question {}", body, question_id));
        }
        out += expand(weighted_pick(*entries, rng).text, question_id, rng, depth + 1);
      } else {
        out += weighted_pick(parse_group(body), rng).text;
      }
      i = end + 1;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

std::string TemplateSet::generate(const BucketKey& key, Rng& rng) const {
  const auto entries = templates_for(key);
  if (entries.empty()) {
    throw Error(ErrorCode::kMissingTemplate, fmt::format("no template for bucket {}", key.str()));
  }
  return normalize_whitespace(expand(weighted_pick(entries, rng).text, key.question_id, rng, 0));
}

void TemplateSet::collect_groups(std::string_view text, int question_id, int depth,
                                 std::vector<std::vector<std::string>>& out) const {
  if (depth > kMaxDepth) throw Error(ErrorCode::kParse, "template expansion too deep");
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '{' && c != '(') continue;
    const auto end = text.find(c == '{' ? '}' : ')', i);
    if (end == std::string_view::npos) throw Error(ErrorCode::kParse, "unbalanced template");
    const auto body = text.substr(i + 1, end - i - 1);
    if (c == '{') {
      const auto* entries = pool(body, question_id);
      if (entries == nullptr) {
        throw Error(ErrorCode::kMissingTemplate,
                    fmt::format("no pool '{}' for question {}", body, question_id));
      }
      for (const auto& e : *entries) collect_groups(e.text, question_id, depth + 1, out);
    } else {
      std::vector<std::string> group;
      for (auto& a : parse_group(body)) group.push_back(normalize_whitespace(a.text));
      if (std::find(out.begin(), out.end(), group) == out.end()) out.push_back(std::move(group));
    }
    i = end;
  }
}

std::vector<std::vector<std::string>> TemplateSet::synonym_groups(int question_id) const {
  std::vector<std::vector<std::string>> out;
  for (int label = 0; label < kNumLabels; ++label) {
    for (const auto& e : templates_for({question_id, label})) {
      collect_groups(e.text, question_id, 0, out);
    }
  }
  return out;
}

std::vector<int> TemplateSet::questions() const {
  std::set<int> qs;
  for (const auto& [key, entries] : templates_) {
    if (key.first != 0) qs.insert(key.first);
  }
  for (const auto& [name, entries] : pools_) {
    const auto at = name.find('@');
    if (at != std::string::npos) qs.insert(static_cast<int>(parse_int(name.substr(at + 1), "question")));
  }
  return {qs.begin(), qs.end()};
}

std::map<BucketKey, int> uniform_counts(int per_bucket) {
  std::map<BucketKey, int> counts;
  for (int q = kMinQuestion; q <= kMaxQuestion; ++q) {
    for (int l = 0; l < kNumLabels; ++l) counts[{q, l}] = per_bucket;
  }
  return counts;
}

GeneratorConfig parse_generator_config(const KeyValueFile& kv, const std::filesystem::path& base_dir) {
  GeneratorConfig c;
  c.name = kv.get_string("name", c.name);
  c.id_prefix = kv.get_string("id_prefix", c.id_prefix);
  c.seed = kv.get_u64("seed");
  c.label_noise = kv.get_double("label_noise", 0.0);
  if (c.label_noise < 0.0 || c.label_noise > 1.0) {
    throw Error(ErrorCode::kConfig, "key 'label_noise': must lie in [0, 1]");
  }
  if (kv.has("count")) c.counts = uniform_counts(static_cast<int>(kv.get_int("count")));
  for (const auto& key : kv.keys_with_prefix("count.")) {
    const auto parts = split(key, '.');
    if (parts.size() != 3 || parts[1].size() < 2 || parts[1][0] != 'q' || parts[2].size() < 2 ||
        parts[2][0] != 'l') {
      throw Error(ErrorCode::kConfig, fmt::format("key '{}': expected count.qQ.lL", key));
    }
    const BucketKey bucket{static_cast<int>(parse_int(parts[1].substr(1), key)),
                           static_cast<int>(parse_int(parts[2].substr(1), key))};
    c.counts[bucket] = static_cast<int>(kv.get_int(key));
  }
  for (const auto& [bucket, n] : c.counts) {
    if (n <= 0) {
      throw Error(ErrorCode::kConfig, fmt::format("bucket {}: count must be positive", bucket.str()));
    }
  }
  if (c.counts.empty()) throw Error(ErrorCode::kConfig, "no bucket counts ('count' or 'count.qQ.lL')");
  c.age_min_months = static_cast<int>(kv.get_int("age_min_months", c.age_min_months));
  c.age_max_months = static_cast<int>(kv.get_int("age_max_months", c.age_max_months));
  if (c.age_min_months < 0 || c.age_max_months < c.age_min_months) {
    throw Error(ErrorCode::kConfig, "key 'age_max_months': age range is empty");
  }
  c.age_missing_rate = kv.get_double("age_missing_rate", 0.0);
  c.gender_weights[0] = kv.get_double("gender.female", c.gender_weights[0]);
  c.gender_weights[1] = kv.get_double("gender.male", c.gender_weights[1]);
  c.gender_weights[2] = kv.get_double("gender.undisclosed", c.gender_weights[2]);
  if (auto t = kv.find("templates"); t && *t != "builtin") c.template_path = base_dir / *t;
  return c;
}

Corpus generate_synthetic(const GeneratorConfig& config) {
  if (config.template_path.empty()) return generate_synthetic(config, TemplateSet::builtin());
  return generate_synthetic(config, TemplateSet::load(config.template_path));
}

Corpus generate_synthetic(const GeneratorConfig& config, const TemplateSet& templates) {
  for (const auto& [key, n] : config.counts) {
    if (n <= 0) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("bucket {}: count must be positive", key.str()));
    }
    if (!templates.has_templates(key)) {
      throw Error(ErrorCode::kMissingTemplate, fmt::format("no template for bucket {}", key.str()));
    }
  }
  const double gender_total = config.gender_weights[0] + config.gender_weights[1] + config.gender_weights[2];
  Corpus corpus;
  corpus.set_name(config.name);
  for (const auto& [key, n] : config.counts) {
    for (int i = 0; i < n; ++i) {
      const auto id = fmt::format("{}q{:02}l{}-{:04}", config.id_prefix, key.question_id, key.label, i);
      auto rng = substream(config.seed, "generate", id);
      QAPair p;
      p.id = id;
      p.question_id = key.question_id;
      p.answer = templates.generate(key, rng);
      p.label = key.label;
      if (config.label_noise > 0.0 && rng.bernoulli(config.label_noise)) {
        p.label = (key.label + 1 + static_cast<int>(rng.below(kNumLabels - 1))) % kNumLabels;
      }
      const auto span = static_cast<std::uint64_t>(config.age_max_months - config.age_min_months + 1);
      const int age = config.age_min_months + static_cast<int>(rng.below(span));
      if (!(config.age_missing_rate > 0.0 && rng.bernoulli(config.age_missing_rate))) {
        p.age_months = age;
      }
      double g = rng.unit() * gender_total;
      p.gender = g < config.gender_weights[0] ? Gender::kFemale
                 : g < config.gender_weights[0] + config.gender_weights[1] ? Gender::kMale
                                                                           : Gender::kUndisclosed;
      p.source = Source::kSynthetic;
      corpus.add(std::move(p));
    }
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Fixture resources

namespace {

bool single_token(const std::string& s) { return tokenize(s).size() == 1; }

double gaussian(Rng& rng) {
  // Box-Muller; u1 is kept away from zero.
  const double u1 = (static_cast<double>(rng.below(1ULL << 53)) + 1.0) * 0x1.0p-53;
  const double u2 = rng.unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& function_word_synonyms() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> kWords = {
      {"the", {"this", "that"}},      {"because", {"since", "as"}},
      {"was", {"had been", "is"}},    {"would", {"will", "could"}},
      {"they", {"these", "those"}},   {"to", {"into", "towards"}},
      {"he", {"him"}},                {"she", {"her"}},
      {"her", {"hers"}},              {"his", {"its"}},
      {"so", {"thus", "very"}},       {"not", {"no"}},
      {"were", {"are", "been"}},      {"it", {"this one"}},
      {"a", {"one", "any"}},          {"would", {"might"}},
  };
  return kWords;
}

const std::vector<std::string>& unrelated_words() {
  static const std::vector<std::string> kWords = {
      "entity", "thing", "matter", "object", "state", "act", "item", "unit",
      "cell",   "form",  "case",   "level", "kind of", "sort of", "region", "device"};
  return kWords;
}

std::vector<std::string> pick_distinct(const std::vector<std::string>& from, std::size_t n,
                                       Rng& rng, const std::set<std::string>& exclude) {
  std::vector<std::string> pool;
  for (const auto& w : from) {
    if (exclude.count(w) == 0) pool.push_back(w);
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n && !pool.empty(); ++i) {
    const auto j = static_cast<std::size_t>(rng.below(pool.size()));
    out.push_back(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return out;
}

void write_lexicon(const std::filesystem::path& path, const std::map<std::string, std::vector<std::string>>& lex) {
  std::string out;
  for (const auto& [word, syns] : lex) {
    if (!syns.empty()) out += fmt::format("{}\t{}\n", word, join(syns, "|"));
  }
  write_file(path, out);
}

void write_embeddings(const std::filesystem::path& path, const std::map<std::string, std::vector<double>>& vectors,
                      bool header) {
  std::string out;
  if (header && !vectors.empty()) out += fmt::format("{} {}\n", vectors.size(), vectors.begin()->second.size());
  for (const auto& [word, vec] : vectors) {
    if (word.find(' ') != std::string::npos) continue;
    out += word;
    for (double v : vec) out += fmt::format(" {:.6f}", v);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace

void write_fixture_resources(const TemplateSet& templates, const std::filesystem::path& dir,
                             std::uint64_t seed) {
  std::filesystem::create_directories(dir);

  // Contextual dictionary: each single-token alternative maps to the other
  // members of its group, per question.
  std::string dict_text;
  std::vector<std::vector<std::string>> all_groups;
  for (int q : templates.questions()) {
    std::map<std::string, std::vector<std::string>> heads;
    for (const auto& group : templates.synonym_groups(q)) {
      if (std::find(all_groups.begin(), all_groups.end(), group) == all_groups.end()) {
        all_groups.push_back(group);
      }
      for (const auto& head : group) {
        if (!single_token(head)) continue;
        auto& list = heads[head];
        for (const auto& syn : group) {
          if (syn != head && std::find(list.begin(), list.end(), syn) == list.end()) list.push_back(syn);
        }
      }
    }
    for (const auto& [head, syns] : heads) {
      if (!syns.empty()) dict_text += fmt::format("{}\t{}\t{}\n", q, head, join(syns, "|"));
    }
  }
  write_file(dir / "dictionary.tsv", dict_text);

  write_file(dir / "phrases.txt",
             "[phrases]\n"
             "i think\ni believe\ni know\ni guess\ni suppose\ni reckon\ni imagine\ni expect\n"
             "i feel\ni am sure\ni would say\nit seems\ni bet\ni suspect\nmy guess is\n"
             "[conjunctions]\n-\nthat\nmaybe\nprobably\n");

  std::vector<std::string> vocabulary;
  {
    std::set<std::string> seen;
    for (const auto& g : all_groups) {
      for (const auto& w : g) {
        if (single_token(w) && seen.insert(w).second) vocabulary.push_back(w);
      }
    }
  }

  // General-purpose lexicons: some true group-mates, some words from other
  // senses, some unrelated.
  auto build_lexicon = [&](std::string_view tag, std::size_t mates, std::size_t foreign,
                           std::size_t junk) {
    auto rng = substream(seed, tag);
    std::map<std::string, std::vector<std::string>> lex;
    for (const auto& g : all_groups) {
      const std::set<std::string> members(g.begin(), g.end());
      for (const auto& w : g) {
        if (!single_token(w)) continue;
        auto& list = lex[w];
        std::set<std::string> exclude(list.begin(), list.end());
        exclude.insert(w);
        auto add = [&](const std::vector<std::string>& words) {
          for (const auto& x : words) {
            if (exclude.insert(x).second) list.push_back(x);
          }
        };
        add(pick_distinct(g, mates, rng, exclude));
        auto outside = exclude;
        outside.insert(members.begin(), members.end());
        add(pick_distinct(vocabulary, foreign, rng, outside));
        add(pick_distinct(unrelated_words(), junk, rng, exclude));
      }
    }
    for (const auto& [w, syns] : function_word_synonyms()) {
      auto& list = lex[w];
      for (const auto& s : syns) {
        if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(s);
      }
    }
    return lex;
  };
  write_lexicon(dir / "wordnet.tsv", build_lexicon("wordnet", 2, 1, 1));
  write_lexicon(dir / "ppdb.tsv", build_lexicon("ppdb", 1, 2, 1));

  // Embeddings: members of a group scatter around a shared centroid.
  auto build_embeddings = [&](std::string_view tag, double spread) {
    constexpr std::size_t kDim = 24;
    auto rng = substream(seed, tag);
    std::map<std::string, std::vector<double>> sums;
    std::map<std::string, int> hits;
    for (const auto& g : all_groups) {
      std::vector<double> centroid(kDim);
      for (auto& v : centroid) v = gaussian(rng);
      for (const auto& w : g) {
        if (!single_token(w)) continue;
        auto& s = sums[w];
        s.resize(kDim, 0.0);
        for (std::size_t d = 0; d < kDim; ++d) s[d] += centroid[d] + spread * gaussian(rng);
        ++hits[w];
      }
    }
    for (const auto& [w, syns] : function_word_synonyms()) {
      for (const auto& x : std::vector<std::string>{w}) {
        if (sums.count(x) != 0) continue;
        auto& s = sums[x];
        s.resize(kDim);
        for (auto& v : s) v = gaussian(rng);
        hits[x] = 1;
      }
    }
    for (auto& [w, s] : sums) {
      for (auto& v : s) v /= hits[w];
    }
    return sums;
  };
  write_embeddings(dir / "glove.txt", build_embeddings("glove", 1.1), false);
  write_embeddings(dir / "fasttext.vec", build_embeddings("fasttext", 0.9), true);
}

}  // namespace qaaug
