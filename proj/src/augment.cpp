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

#include "qaaug/augment.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/text_io.hpp"

namespace qaaug {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kDictionary: return "dictionary";
    case Strategy::kPhrase: return "phrase";
    case Strategy::kOrder: return "order";
    case Strategy::kWordnet: return "wordnet";
    case Strategy::kPpdb: return "ppdb";
    case Strategy::kGlove: return "glove";
    case Strategy::kFasttext: return "fasttext";
  }
  return "";
}

Strategy parse_strategy(std::string_view name) {
  for (auto s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  if (name == "dict") return Strategy::kDictionary;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown strategy '{}'", name));
}

std::string chain_name(const StrategyChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i > 0) out += '+';
    out += to_string(chain[i]);
  }
  return out;
}

StrategyChain parse_chain(std::string_view name) {
  StrategyChain chain;
  for (const auto& part : split(name, '+')) chain.push_back(parse_strategy(trim(part)));
  return chain;
}

std::string_view to_string(AugmentStatus s) {
  switch (s) {
    case AugmentStatus::kApplied: return "Applied";
    case AugmentStatus::kNoEligibleToken: return "NoEligibleToken";
    case AugmentStatus::kAlreadyPrefixed: return "AlreadyPrefixed";
    case AugmentStatus::kTooShort: return "TooShort";
    case AugmentStatus::kAllStagesSkipped: return "AllStagesSkipped";
  }
  return "";
}

namespace {

AugmentResult skip(AugmentStatus status) { return {status, {}}; }

// New record derived from `pair` with `answer` and `stage` appended to the
// provenance. parent_id always names the root original.
AugmentResult derive(const QAPair& pair, std::string answer, Strategy stage) {
  AugmentResult out;
  out.pair = pair;
  out.pair.answer = std::move(answer);
  out.pair.source = Source::kAugmented;
  if (!out.pair.parent_id) out.pair.parent_id = pair.id;
  out.pair.strategy_chain.emplace_back(to_string(stage));
  out.pair.id = *out.pair.parent_id + "~" + join(out.pair.strategy_chain, "+");
  return out;
}

int draw_count(Rng& rng, std::optional<int> forced) {
  if (forced) {
    if (*forced < 1) throw Error(ErrorCode::kInvalidArgument, "forced draw count must be >= 1");
    return *forced;
  }
  return 1 + static_cast<int>(rng.below(2));
}

// Shared selection protocol of the word-replacement strategies: pick
// min(r, |eligible|) distinct positions uniformly, then one candidate per
// position uniformly, and splice the candidate's tokens in.
template <typename CandidatesFn>
AugmentResult replace_words(const QAPair& pair, Strategy stage, Rng& rng, ReplaceOptions options,
                            CandidatesFn&& candidates_for) {
  auto seq = tokenize(pair.answer);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (is_punctuation_token(seq.tokens[i])) continue;
    const std::vector<std::string>* c = candidates_for(seq.tokens[i]);
    if (c != nullptr && !c->empty()) eligible.push_back(i);
  }
  if (eligible.empty()) return skip(AugmentStatus::kNoEligibleToken);

  const auto wanted = static_cast<std::size_t>(draw_count(rng, options.sites));
  const auto n = std::min(wanted, eligible.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
  }
  std::vector<std::size_t> chosen(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::string> picks;
  for (auto pos : chosen) {
    const auto& c = *candidates_for(seq.tokens[pos]);
    picks.push_back(c[static_cast<std::size_t>(rng.below(c.size()))]);
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto pos = chosen[i];
    auto repl = tokenize(picks[i]);
    repl.glued.front() = seq.glued[pos];
    seq.tokens.erase(seq.tokens.begin() + static_cast<std::ptrdiff_t>(pos));
    seq.glued.erase(seq.glued.begin() + static_cast<std::ptrdiff_t>(pos));
    seq.tokens.insert(seq.tokens.begin() + static_cast<std::ptrdiff_t>(pos), repl.tokens.begin(),
                      repl.tokens.end());
    seq.glued.insert(seq.glued.begin() + static_cast<std::ptrdiff_t>(pos), repl.glued.begin(),
                     repl.glued.end());
  }
  return derive(pair, detokenize(seq), stage);
}

}  // namespace

EmbeddingNeighbors::EmbeddingNeighbors(std::shared_ptr<const EmbeddingTable> table, std::size_t k)
    : table_(std::move(table)), k_(k) {
  if (!table_) throw Error(ErrorCode::kUnboundResource, "embedding table is null");
  if (k_ == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
}

const std::vector<Neighbor>& EmbeddingNeighbors::neighbors(std::string_view word) const {
  static const std::vector<Neighbor> kNone;
  if (!table_->contains(word)) return kNone;
  std::lock_guard lock(mutex_);
  auto it = cache_.find(std::string(word));
  if (it == cache_.end()) {
    it = cache_.emplace(std::string(word), nearest_neighbors(*table_, word, k_)).first;
  }
  return it->second;
}

AugmentResult augment_dictionary(const QAPair& pair, const ContextualSynonymDictionary& dict,
                                 Rng& rng, ReplaceOptions options) {
  return replace_words(pair, Strategy::kDictionary, rng, options, [&](const std::string& tok) {
    return dict.lookup(pair.question_id, tok);
  });
}

AugmentResult augment_lexicon(const QAPair& pair, const SynonymLexicon& lexicon, Rng& rng,
                              Strategy tag, ReplaceOptions options) {
  return replace_words(pair, tag, rng, options,
                       [&](const std::string& tok) { return lexicon.lookup(tok); });
}

AugmentResult augment_embedding(const QAPair& pair, const EmbeddingNeighbors& neighbors, Rng& rng,
                                Strategy tag, ReplaceOptions options) {
  // Candidate lists are materialised per call so the pointer stays valid.
  std::map<std::string, std::vector<std::string>, std::less<>> words;
  return replace_words(pair, tag, rng, options,
                       [&](const std::string& tok) -> const std::vector<std::string>* {
                         auto it = words.find(tok);
                         if (it == words.end()) {
                           std::vector<std::string> list;
                           for (const auto& n : neighbors.neighbors(tok)) list.push_back(n.word);
                           it = words.emplace(tok, std::move(list)).first;
                         }
                         return &it->second;
                       });
}

AugmentResult augment_phrase(const QAPair& pair, const PhraseInventory& inventory, Rng& rng) {
  if (inventory.expanded.empty()) throw Error(ErrorCode::kEmptySection, "phrase inventory is empty");
  const auto tokens = tokenize(pair.answer).tokens;
  for (const auto& form : inventory.expanded) {
    const auto prefix = tokenize(form).tokens;
    if (prefix.size() <= tokens.size() && std::equal(prefix.begin(), prefix.end(), tokens.begin())) {
      return skip(AugmentStatus::kAlreadyPrefixed);
    }
  }
  const auto& form = inventory.expanded[static_cast<std::size_t>(rng.below(inventory.expanded.size()))];
  return derive(pair, form + " " + pair.answer, Strategy::kPhrase);
}

void swap_adjacent(TokenSequence& seq, std::size_t index, SwapSide side) {
  const std::size_t other = side == SwapSide::kLeft ? index - 1 : index + 1;
  if ((side == SwapSide::kLeft && index == 0) || other >= seq.size() || index >= seq.size()) {
    throw Error(ErrorCode::kInvalidArgument, "swap neighbour out of range");
  }
  std::swap(seq.tokens[index], seq.tokens[other]);
  const bool a = seq.glued[index];
  seq.glued[index] = seq.glued[other];
  seq.glued[other] = a;
  seq.glued[0] = false;
  // A run of attached tokens may hold at most one word; a second word would
  // fuse with the first when the text is tokenized again.
  bool word_in_run = false;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const bool word = !is_punctuation_token(seq.tokens[i]);
    if (!seq.glued[i]) {
      word_in_run = word;
    } else if (word) {
      if (word_in_run) seq.glued[i] = false;
      word_in_run = true;
    }
  }
}

AugmentResult augment_order(const QAPair& pair, Rng& rng, OrderOptions options) {
  auto seq = tokenize(pair.answer);
  if (seq.size() < 2) return skip(AugmentStatus::kTooShort);
  const int swaps = draw_count(rng, options.swaps);
  for (int s = 0; s < swaps; ++s) {
    const auto i = static_cast<std::size_t>(rng.below(seq.size()));
    SwapSide side;
    if (i == 0) {
      side = SwapSide::kRight;
    } else if (i + 1 == seq.size()) {
      side = SwapSide::kLeft;
    } else {
      side = rng.below(2) == 0 ? SwapSide::kLeft : SwapSide::kRight;
    }
    swap_adjacent(seq, i, side);
  }
  return derive(pair, detokenize(seq), Strategy::kOrder);
}

bool AugmentResources::bound(Strategy s) const {
  switch (s) {
    case Strategy::kDictionary: return dictionary != nullptr;
    case Strategy::kPhrase: return phrases != nullptr;
    case Strategy::kOrder: return true;
    case Strategy::kWordnet: return wordnet != nullptr;
    case Strategy::kPpdb: return ppdb != nullptr;
    case Strategy::kGlove: return glove != nullptr;
    case Strategy::kFasttext: return fasttext != nullptr;
  }
  return false;
}

AugmentResult apply_strategy(Strategy s, const QAPair& pair, const AugmentResources& resources,
                             Rng& rng) {
  if (!resources.bound(s)) {
    throw Error(ErrorCode::kUnboundResource, fmt::format("no resource bound for '{}'", to_string(s)));
  }
  switch (s) {
    case Strategy::kDictionary: return augment_dictionary(pair, *resources.dictionary, rng);
    case Strategy::kPhrase: return augment_phrase(pair, *resources.phrases, rng);
    case Strategy::kOrder: return augment_order(pair, rng);
    case Strategy::kWordnet: return augment_lexicon(pair, *resources.wordnet, rng, s);
    case Strategy::kPpdb: return augment_lexicon(pair, *resources.ppdb, rng, s);
    case Strategy::kGlove: return augment_embedding(pair, *resources.glove, rng, s);
    case Strategy::kFasttext: return augment_embedding(pair, *resources.fasttext, rng, s);
  }
  return skip(AugmentStatus::kAllStagesSkipped);
}

AugmentResult compose(const StrategyChain& chain, const QAPair& pair,
                      const AugmentResources& resources, Rng& rng) {
  if (chain.empty()) throw Error(ErrorCode::kInvalidArgument, "empty strategy chain");
  if (chain.size() == 1) return apply_strategy(chain.front(), pair, resources, rng);
  QAPair current = pair;
  bool any = false;
  for (auto stage : chain) {
    auto r = apply_strategy(stage, current, resources, rng);
    if (r.applied()) {
      current = std::move(r.pair);
      any = true;
    }
  }
  if (!any) return skip(AugmentStatus::kAllStagesSkipped);
  return {AugmentStatus::kApplied, std::move(current)};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<TrainingSetSpec> make_augmented_sets() {
  using S = Strategy;
  const StrategyChain dict{S::kDictionary}, phrase{S::kPhrase}, order{S::kOrder},
      wordnet{S::kWordnet}, fasttext{S::kFasttext}, ppdb{S::kPpdb}, glove{S::kGlove};
  const std::vector<StrategyChain> ab_hq{phrase, dict, order};
  const std::vector<StrategyChain> ab_lq{wordnet, fasttext, ppdb, glove};
  auto all_hq = ab_hq;
  all_hq.push_back({S::kDictionary, S::kPhrase});
  all_hq.push_back({S::kDictionary, S::kOrder});
  all_hq.push_back({S::kPhrase, S::kOrder});
  all_hq.push_back({S::kDictionary, S::kPhrase, S::kOrder});
  auto all_lq = ab_lq;
  for (auto s : {S::kWordnet, S::kFasttext, S::kPpdb, S::kGlove}) all_lq.push_back({s, S::kOrder});
  return {
      {"orig", {}},           {"phrase", {phrase}},     {"dict", {dict}},
      {"order", {order}},     {"wordnet", {wordnet}},   {"fasttext", {fasttext}},
      {"ppdb", {ppdb}},       {"glove", {glove}},       {"ab-lq", ab_lq},
      {"ab-hq", ab_hq},       {"all-lq", all_lq},       {"all-hq", all_hq},
  };
}

}  // namespace

const std::vector<TrainingSetSpec>& augmented_training_sets() {
  static const auto kSets = make_augmented_sets();
  return kSets;
}

const std::vector<TrainingSetSpec>& all_training_sets() {
  static const auto kSets = [] {
    auto sets = make_augmented_sets();
    sets.insert(sets.begin() + 1, TrainingSetSpec{"uk-20", {}, true});
    return sets;
  }();
  return kSets;
}

const TrainingSetSpec& training_set_spec(std::string_view name) {
  for (const auto& spec : all_training_sets()) {
    if (spec.name == name) return spec;
  }
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown training set '{}'", name));
}

ComponentSamples sample_components(const SubcorpusIndex& index, const TrainingSetSpec& spec,
                                   const SamplingConfig& config, bool shared) {
  ComponentSamples out;
  for (const auto& chain : spec.components) {
    auto cfg = config;
    if (!shared) cfg.seed = derive_seed(config.seed, "component", chain_name(chain));
    out[chain_name(chain)] = stratified_sample_buckets(index, cfg);
  }
  return out;
}

Corpus build_training_set(const Corpus& base, const TrainingSetSpec& spec,
                          const ComponentSamples& samples, const AugmentResources& resources,
                          std::uint64_t master_seed, BuildReport* report) {
  for (const auto& chain : spec.components) {
    for (auto s : chain) {
      if (!resources.bound(s)) {
        throw Error(ErrorCode::kUnboundResource,
                    fmt::format("training set '{}' needs '{}'", spec.name, to_string(s)));
      }
    }
  }
  BuildReport local;
  Corpus out(spec.name, base.records());
  const auto index = index_subcorpora(base);

  for (const auto& chain : spec.components) {
    const auto name = chain_name(chain);
    const auto found = samples.find(name);
    if (found == samples.end()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("no sample for component '{}'", name));
    }
    std::size_t achieved_total = 0;
    for (const auto& [key, sampled] : found->second) {
      const std::size_t quota = sampled.size();
      std::vector<std::string> attempts = sampled;
      {
        const std::set<std::string> in_sample(sampled.begin(), sampled.end());
        std::vector<std::string> pool;
        for (const auto& m : index.bucket(key)) {
          if (in_sample.count(m.id) == 0) pool.push_back(m.id);
        }
        auto rng = substream(master_seed, "resample:" + name, key.str());
        rng.shuffle(std::span<std::string>(pool));
        attempts.insert(attempts.end(), pool.begin(), pool.end());
      }
      std::map<std::string, int> occurrence;
      std::size_t achieved = 0;
      for (const auto& id : attempts) {
        if (achieved == quota) break;
        const QAPair* parent = base.find(id);
        if (parent == nullptr) {
          throw Error(ErrorCode::kInvalidArgument, fmt::format("sampled id '{}' not in base", id));
        }
        const int occ = occurrence[id]++;
        const auto entity = occ == 0 ? id : fmt::format("{}#{}", id, occ);
        auto rng = substream(master_seed, name, entity);
        auto result = compose(chain, *parent, resources, rng);
        if (!result.applied()) {
          ++local.skipped;
          continue;
        }
        result.pair.id = occ == 0 ? fmt::format("{}~{}", id, name)
                                  : fmt::format("{}~{}~{}", id, name, occ);
        out.add(std::move(result.pair));
        ++achieved;
      }
      if (achieved < quota) local.unmet.push_back({name, key, quota, achieved});
      achieved_total += achieved;
    }
    local.achieved[name] = achieved_total;
  }
  if (report != nullptr) *report = std::move(local);
  return out;
}

}  // namespace qaaug
