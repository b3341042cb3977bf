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

#include "qaaug/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/rng.hpp"
#include "qaaug/text_io.hpp"

namespace qaaug {

std::unordered_set<std::string> FoldAssignment::test_ids(std::size_t fold) const {
  return {folds.at(fold).begin(), folds.at(fold).end()};
}

FoldAssignment kfold_split(const Corpus& corpus, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, fmt::format("k-fold needs k >= 2, got {}", k));
  const auto index = index_subcorpora(corpus);
  if (index.buckets.empty()) throw Error(ErrorCode::kEmptyInput, "no records to split");
  for (const auto& [key, members] : index.buckets) {
    if (members.size() < k) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("stratum {} has {} records, fewer than k = {}", key.str(), members.size(), k));
    }
  }
  FoldAssignment out;
  out.k = k;
  out.folds.resize(k);
  std::size_t dealt = 0;
  for (const auto& [key, members] : index.buckets) {
    std::vector<std::size_t> order(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto rng = substream(seed, "kfold", key.str());
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i = 0; i < order.size(); ++i) {
      out.fold_of[members[order[i]].id] = (dealt + i) % k;
    }
    dealt += members.size();
  }
  for (const auto& r : corpus.records()) {
    const auto it = out.fold_of.find(r.id);
    if (it != out.fold_of.end()) out.folds[it->second].push_back(r.id);
  }
  return out;
}

Corpus leakage_filter(const Corpus& training, const std::unordered_set<std::string>& test_ids) {
  std::vector<QAPair> kept;
  kept.reserve(training.size());
  for (const auto& r : training.records()) {
    if (r.is_augmented()) {
      const auto& parent = *r.parent_id;
      const bool in_test = test_ids.count(parent) != 0;
      if (!in_test && !training.contains(parent)) {
        throw Error(ErrorCode::kBrokenProvenance,
                    fmt::format("record '{}' refers to missing parent '{}'", r.id, parent));
      }
      if (in_test) continue;
    } else if (test_ids.count(r.id) != 0) {
      continue;
    }
    kept.push_back(r);
  }
  return Corpus(training.name(), std::move(kept));
}

std::size_t count_leaks(const Corpus& training, const std::unordered_set<std::string>& test_ids) {
  std::size_t n = 0;
  for (const auto& r : training.records()) {
    if (test_ids.count(r.id) != 0 || (r.parent_id && test_ids.count(*r.parent_id) != 0)) ++n;
  }
  return n;
}

Corpus build_recipe(const Corpus& base, const Corpus& cross, const TrainingSetSpec& spec,
                    const AugmentResources& resources, const SamplingConfig& sampling, std::uint64_t seed,
                    BuildReport* report) {
  if (spec.uses_cross_corpus) {
    std::vector<QAPair> records;
    for (const auto& r : cross.records()) {
      if (!r.is_augmented()) records.push_back(r);
    }
    if (records.empty()) {
      throw Error(ErrorCode::kEmptyInput, fmt::format("training set '{}' needs a non-empty cross corpus", spec.name));
    }
    if (report != nullptr) *report = {};
    return Corpus(spec.name, std::move(records));
  }
  auto cfg = sampling;
  cfg.seed = derive_seed(seed, "sampling", "");
  const auto samples = sample_components(index_subcorpora(base), spec, cfg);
  auto out = build_training_set(base, spec, samples, resources, derive_seed(seed, "augment", ""), report);
  out.set_name(spec.name);
  return out;
}

std::vector<InputSetup> parse_input_setups(const std::vector<std::string>& names) {
  std::vector<InputSetup> out;
  for (const auto& n : names) {
    if (n == "qa") out.push_back({"qa", true});
    else if (n == "a") out.push_back({"a", false});
    else throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown input setup '{}' (expected qa or a)", n));
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "no input setup given");
  return out;
}

namespace {

const std::vector<int>& all_questions() {
  static const std::vector<int> q = [] {
    std::vector<int> v;
    for (int i = kMinQuestion; i <= kMaxQuestion; ++i) v.push_back(i);
    return v;
  }();
  return q;
}

EvalResult score(const TrainedModel& model, const std::vector<const QAPair*>& test, EvalTarget target) {
  std::vector<int> truth, pred, qids;
  truth.reserve(test.size());
  pred.reserve(test.size());
  qids.reserve(test.size());
  for (const auto* r : test) {
    truth.push_back(r->label);
    pred.push_back(model.predict(*r));
    qids.push_back(r->question_id);
  }
  return evaluate(truth, pred, qids, target, all_questions());
}

std::vector<const QAPair*> rows_of(const Corpus& c, const std::vector<std::string>& ids) {
  std::vector<const QAPair*> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(c.find(id));
  return out;
}

struct Cell {
  std::size_t spec = 0;
  std::size_t setup = 0;
  std::size_t fold = 0;
};

}  // namespace

ExperimentResult run_experiment(const Corpus& base, const Corpus& cross, const std::vector<TrainingSetSpec>& specs,
                                const AugmentResources& resources, const ExperimentConfig& config) {
  if (specs.empty()) throw Error(ErrorCode::kInvalidArgument, "no training sets to evaluate");
  if (config.setups.empty()) throw Error(ErrorCode::kInvalidArgument, "no input setup given");
  if (cross.empty()) throw Error(ErrorCode::kEmptyInput, "cross corpus is empty");

  ExperimentResult out;
  out.setups = config.setups;
  out.folds = config.folds;
  for (const auto& s : specs) out.training_sets.push_back(s.name);

  const auto base_folds = kfold_split(base, config.folds, derive_seed(config.seed, "folds", "base"));
  const bool any_cross =
      std::any_of(specs.begin(), specs.end(), [](const TrainingSetSpec& s) { return s.uses_cross_corpus; });
  FoldAssignment cross_folds;
  if (any_cross) cross_folds = kfold_split(cross, config.folds, derive_seed(config.seed, "folds", "cross"));

  std::vector<Corpus> built;
  built.reserve(specs.size());
  for (const auto& spec : specs) {
    BuildReport report;
    built.push_back(build_recipe(base, cross, spec, resources, config.sampling, config.seed, &report));
    out.built_sizes[spec.name] = built.back().size();
    out.build_reports[spec.name] = std::move(report);
  }

  std::vector<const QAPair*> cross_all;
  for (const auto& r : cross.records()) {
    if (!r.is_augmented()) cross_all.push_back(&r);
  }

  std::vector<Cell> cells;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (std::size_t u = 0; u < config.setups.size(); ++u) {
      for (std::size_t f = 0; f < config.folds; ++f) cells.push_back({s, u, f});
    }
  }

  struct CellOutput {
    std::size_t train_size = 0;
    std::size_t removed = 0;
    std::size_t leaks = 0;
    EvalResult fold_test;
    EvalResult cross_test;
  };
  std::vector<CellOutput> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      try {
        const auto& cell = cells[i];
        const auto& spec = specs[cell.spec];
        const auto& setup = config.setups[cell.setup];
        const auto& folds = spec.uses_cross_corpus ? cross_folds : base_folds;
        const auto test_ids = folds.test_ids(cell.fold);
        const auto train_set = leakage_filter(built[cell.spec], test_ids);

        auto mc = config.model;
        mc.use_question = setup.use_question;
        mc.seed = derive_seed(config.seed, "train", fmt::format("{}/{}/{}", spec.name, setup.name, cell.fold));
        const auto model = train(train_set, mc);

        auto& o = results[i];
        o.train_size = train_set.size();
        o.removed = built[cell.spec].size() - train_set.size();
        o.leaks = count_leaks(train_set, test_ids);
        o.fold_test = score(model, rows_of(base, base_folds.folds[cell.fold]), EvalTarget::kFoldTest);
        o.cross_test = spec.uses_cross_corpus
                           ? score(model, rows_of(cross, cross_folds.folds[cell.fold]), EvalTarget::kCrossCorpus)
                           : score(model, cross_all, EvalTarget::kCrossCorpus);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, cells.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    const auto& o = results[i];
    const auto& name = specs[cell.spec].name;
    const auto& setup = config.setups[cell.setup].name;
    out.runs.push_back({name, setup, cell.fold, o.train_size, o.fold_test});
    out.runs.push_back({name, setup, cell.fold, o.train_size, o.cross_test});
    ++out.audit.cells;
    out.audit.removed += o.removed;
    out.audit.violations += o.leaks;
  }
  return out;
}

std::string format_fold_report(const ExperimentResult& r, const std::string& setup) {
  std::string out = csv_line({"training_set", "target", "fold", "overall_f1", "f1_per_q", "std_per_q"});
  for (const auto& run : r.runs) {
    if (run.setup != setup) continue;
    out += csv_line({run.training_set, std::string(to_string(run.result.target)), std::to_string(run.fold),
                     format_real(run.result.overall_f1), format_real(run.result.f1_per_q),
                     format_real(run.result.std_per_q)});
  }
  return out;
}

std::vector<AggregateRow> aggregate(const ExperimentResult& r, const std::string& setup) {
  std::vector<AggregateRow> rows;
  for (const auto& name : r.training_sets) {
    AggregateRow row;
    row.training_set = name;
    std::map<EvalTarget, std::size_t> n;
    for (const auto& run : r.runs) {
      if (run.setup != setup || run.training_set != name) continue;
      auto& m = row.mean[run.result.target];
      m.target = run.result.target;
      m.overall_f1 += run.result.overall_f1;
      m.f1_per_q += run.result.f1_per_q;
      m.std_per_q += run.result.std_per_q;
      ++n[run.result.target];
    }
    for (auto& [t, m] : row.mean) {
      const auto d = static_cast<double>(n[t]);
      m.overall_f1 /= d;
      m.f1_per_q /= d;
      m.std_per_q /= d;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_aggregate_markdown(const ExperimentResult& r, const std::string& setup) {
  std::string out = fmt::format("Mean over {} folds, input setup `{}`.\n\n", r.folds, setup);
  out += "| Training set | Test F1 | Test F1-per-Q | Test STD-per-Q | Cross F1 | Cross F1-per-Q | Cross STD-per-Q |\n";
  out += "|---|---|---|---|---|---|---|\n";
  for (const auto& row : aggregate(r, setup)) {
    out += fmt::format("| {} ", row.training_set);
    for (auto t : {EvalTarget::kFoldTest, EvalTarget::kCrossCorpus}) {
      const auto it = row.mean.find(t);
      if (it == row.mean.end()) {
        out += "| - | - | - ";
      } else {
        out += fmt::format("| {:.3f} | {:.3f} | {:.3f} ", it->second.overall_f1, it->second.f1_per_q,
                           it->second.std_per_q);
      }
    }
    out += "|\n";
  }
  return out;
}

RankMatrix build_rank_matrix(const ExperimentResult& r, EvalTarget target, const std::string& metric) {
  RankMatrix m;
  if (metric == "overall_f1" || metric == "f1_per_q") m.higher_is_better = true;
  else if (metric == "std_per_q") m.higher_is_better = false;
  else throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown rank metric '{}'", metric));
  m.treatments = r.training_sets;
  std::map<std::string, std::size_t> column;
  for (std::size_t j = 0; j < m.treatments.size(); ++j) column[m.treatments[j]] = j;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> row_of;
  for (std::size_t u = 0; u < r.setups.size(); ++u) {
    for (std::size_t f = 0; f < r.folds; ++f) {
      row_of[{u, f}] = m.units.size();
      m.units.push_back(fmt::format("{}/fold{}", r.setups[u].name, f));
      m.scores.emplace_back(m.treatments.size(), std::nan(""));
    }
  }
  std::map<std::string, std::size_t> setup_index;
  for (std::size_t u = 0; u < r.setups.size(); ++u) setup_index[r.setups[u].name] = u;
  for (const auto& run : r.runs) {
    if (run.result.target != target) continue;
    const double v = metric == "overall_f1" ? run.result.overall_f1
                     : metric == "f1_per_q" ? run.result.f1_per_q
                                            : run.result.std_per_q;
    m.scores[row_of.at({setup_index.at(run.setup), run.fold})][column.at(run.training_set)] = v;
  }
  return m;
}

}  // namespace qaaug
