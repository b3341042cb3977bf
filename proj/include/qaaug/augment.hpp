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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qaaug/corpus.hpp"
#include "qaaug/resources.hpp"
#include "qaaug/rng.hpp"
#include "qaaug/tokenize.hpp"

namespace qaaug {

enum class Strategy { kDictionary, kPhrase, kOrder, kWordnet, kPpdb, kGlove, kFasttext };

inline constexpr Strategy kAllStrategies[] = {Strategy::kDictionary, Strategy::kPhrase,
                                              Strategy::kOrder,      Strategy::kWordnet,
                                              Strategy::kPpdb,       Strategy::kGlove,
                                              Strategy::kFasttext};

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

using StrategyChain = std::vector<Strategy>;

std::string chain_name(const StrategyChain& chain);  // "dictionary+phrase"
StrategyChain parse_chain(std::string_view name);

enum class AugmentStatus {
  kApplied,
  kNoEligibleToken,
  kAlreadyPrefixed,
  kTooShort,
  kAllStagesSkipped,
};

std::string_view to_string(AugmentStatus s);

// Outcome of one augmentation attempt. Anything but kApplied is a skip
// signal: the caller decides whether to try another pair.
struct AugmentResult {
  AugmentStatus status = AugmentStatus::kApplied;
  QAPair pair;  // meaningful only when applied
  bool applied() const { return status == AugmentStatus::kApplied; }
};

// Draw overrides for tests. Unset fields are drawn uniformly from {1, 2}.
struct ReplaceOptions {
  std::optional<int> sites;
};
struct OrderOptions {
  std::optional<int> swaps;
};

// Top-k neighbour lists, computed once per word and shared between threads.
class EmbeddingNeighbors {
 public:
  EmbeddingNeighbors(std::shared_ptr<const EmbeddingTable> table, std::size_t k = 10);

  const EmbeddingTable& table() const { return *table_; }
  std::size_t k() const { return k_; }
  // Empty for out-of-vocabulary words.
  const std::vector<Neighbor>& neighbors(std::string_view word) const;

 private:
  std::shared_ptr<const EmbeddingTable> table_;
  std::size_t k_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::vector<Neighbor>> cache_;
};

AugmentResult augment_dictionary(const QAPair& pair, const ContextualSynonymDictionary& dict,
                                 Rng& rng, ReplaceOptions options = {});

AugmentResult augment_phrase(const QAPair& pair, const PhraseInventory& inventory, Rng& rng);

AugmentResult augment_order(const QAPair& pair, Rng& rng, OrderOptions options = {});

// `tag` names the lexicon in provenance (wordnet or ppdb).
AugmentResult augment_lexicon(const QAPair& pair, const SynonymLexicon& lexicon, Rng& rng,
                              Strategy tag = Strategy::kWordnet, ReplaceOptions options = {});

// `tag` names the embedding in provenance (glove or fasttext).
AugmentResult augment_embedding(const QAPair& pair, const EmbeddingNeighbors& neighbors, Rng& rng,
                                Strategy tag = Strategy::kGlove, ReplaceOptions options = {});

enum class SwapSide { kLeft, kRight };

// Exchanges token `index` with its neighbour; the attachment flags travel
// with their tokens and the first token is never attached.
void swap_adjacent(TokenSequence& seq, std::size_t index, SwapSide side);

struct AugmentResources {
  std::shared_ptr<const ContextualSynonymDictionary> dictionary;
  std::shared_ptr<const PhraseInventory> phrases;
  std::shared_ptr<const SynonymLexicon> wordnet;
  std::shared_ptr<const SynonymLexicon> ppdb;
  std::shared_ptr<const EmbeddingNeighbors> glove;
  std::shared_ptr<const EmbeddingNeighbors> fasttext;

  bool bound(Strategy s) const;
};

AugmentResult apply_strategy(Strategy s, const QAPair& pair, const AugmentResources& resources,
                             Rng& rng);

// Applies the stages in order. A skipped stage passes its input through;
// the chain fails with kAllStagesSkipped only when no stage applied. A
// one-stage chain reports that stage's own status.
AugmentResult compose(const StrategyChain& chain, const QAPair& pair,
                      const AugmentResources& resources, Rng& rng);

// ---------------------------------------------------------------------------
// Training-set recipes

struct TrainingSetSpec {
  std::string name;
  std::vector<StrategyChain> components;
  // Train on the cross corpus instead of the base corpus (no augmentation).
  bool uses_cross_corpus = false;
};

// orig, phrase, dict, order, wordnet, fasttext, ppdb, glove, ab-lq, ab-hq,
// all-lq, all-hq, in that order.
const std::vector<TrainingSetSpec>& augmented_training_sets();

// The twelve recipes above plus "uk-20", the cross corpus on its own.
const std::vector<TrainingSetSpec>& all_training_sets();

const TrainingSetSpec& training_set_spec(std::string_view name);

// Sampled ids per component chain, keyed by chain_name().
using ComponentSamples = std::map<std::string, BucketSample>;

// Draws one stratified sample per component. Independent draws use a seed
// derived from (config.seed, chain name); `shared` reuses one sample.
ComponentSamples sample_components(const SubcorpusIndex& index, const TrainingSetSpec& spec,
                                   const SamplingConfig& config, bool shared = false);

struct UnmetQuota {
  std::string component;
  BucketKey bucket;
  std::size_t wanted = 0;
  std::size_t achieved = 0;
};

struct BuildReport {
  std::map<std::string, std::size_t> achieved;  // per component
  std::vector<UnmetQuota> unmet;
  std::size_t skipped = 0;
};

// Base records followed by one augmented record per (component, sampled
// id). Skipped pairs are replaced with unsampled records from the same
// bucket; a bucket that runs out is reported in `report`.
Corpus build_training_set(const Corpus& base, const TrainingSetSpec& spec,
                          const ComponentSamples& samples, const AugmentResources& resources,
                          std::uint64_t master_seed, BuildReport* report = nullptr);

}  // namespace qaaug
