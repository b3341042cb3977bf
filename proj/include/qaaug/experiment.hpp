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
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qaaug/augment.hpp"
#include "qaaug/corpus.hpp"
#include "qaaug/metrics.hpp"
#include "qaaug/model.hpp"
#include "qaaug/stats.hpp"

namespace qaaug {

// Fold membership of every non-augmented record.
struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::vector<std::string>> folds;  // ids in corpus order
  std::unordered_map<std::string, std::size_t> fold_of;

  std::unordered_set<std::string> test_ids(std::size_t fold) const;
};

// Stratified by (question, label): each stratum is shuffled with a seeded
// substream and dealt round-robin, starting at a per-stratum offset so
// that fold totals stay balanced too. Throws InvalidArgument for k < 2 or
// k larger than the smallest stratum.
FoldAssignment kfold_split(const Corpus& corpus, std::size_t k, std::uint64_t seed);

// Drops test-fold originals and every augmented record whose parent is in
// the test fold. Throws BrokenProvenance when a parent is missing from
// both the training corpus and the test fold.
Corpus leakage_filter(const Corpus& training, const std::unordered_set<std::string>& test_ids);

// Number of records in `training` that are in the test fold or derived
// from it.
std::size_t count_leaks(const Corpus& training, const std::unordered_set<std::string>& test_ids);

// Builds one recipe with the seeds run_experiment and the CLI share:
// sampling from (seed, "sampling") and augmentation from (seed, "augment").
// A cross-corpus recipe returns the cross corpus's non-augmented records.
Corpus build_recipe(const Corpus& base, const Corpus& cross, const TrainingSetSpec& spec,
                    const AugmentResources& resources, const SamplingConfig& sampling, std::uint64_t seed,
                    BuildReport* report = nullptr);

struct InputSetup {
  std::string name;  // "qa" or "a"
  bool use_question = true;
};

std::vector<InputSetup> parse_input_setups(const std::vector<std::string>& names);

struct ExperimentConfig {
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  SamplingConfig sampling;
  ModelConfig model;
  std::vector<InputSetup> setups{{"qa", true}};
  std::size_t workers = 1;
};

struct RunRecord {
  std::string training_set;
  std::string setup;
  std::size_t fold = 0;
  std::size_t train_size = 0;
  EvalResult result;
};

struct LeakageAudit {
  std::size_t cells = 0;
  std::size_t removed = 0;     // records dropped by the filter, all cells
  std::size_t violations = 0;  // post-hoc scan of the filtered sets
};

struct ExperimentResult {
  std::vector<std::string> training_sets;
  std::vector<InputSetup> setups;
  std::size_t folds = 0;
  std::vector<RunRecord> runs;  // ordered by (set, setup, fold, target)
  std::map<std::string, std::size_t> built_sizes;
  std::map<std::string, BuildReport> build_reports;
  LeakageAudit audit;
};

// For every (training set, input setup, fold): filter, train, and score on
// the base test fold and on the cross corpus. A recipe that trains on the
// cross corpus is cross-validated on it instead, so its cross-corpus score
// uses the held-out cross fold and its fold-test score the base fold.
ExperimentResult run_experiment(const Corpus& base, const Corpus& cross, const std::vector<TrainingSetSpec>& specs,
                                const AugmentResources& resources, const ExperimentConfig& config);

// Per-fold CSV for one input setup:
// training_set,target,fold,overall_f1,f1_per_q,std_per_q
std::string format_fold_report(const ExperimentResult& r, const std::string& setup);

struct AggregateRow {
  std::string training_set;
  std::map<EvalTarget, EvalResult> mean;  // metrics averaged over folds
};

std::vector<AggregateRow> aggregate(const ExperimentResult& r, const std::string& setup);

// Markdown table: one row per training set, F1 / F1-per-Q / STD-per-Q for
// both targets.
std::string format_aggregate_markdown(const ExperimentResult& r, const std::string& setup);

// Units are (setup, fold) runs, treatments the training sets.
RankMatrix build_rank_matrix(const ExperimentResult& r, EvalTarget target, const std::string& metric);

}  // namespace qaaug
