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

#include "qaaug/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/hash.hpp"
#include "qaaug/resources.hpp"
#include "qaaug/stats.hpp"
#include "qaaug/synthetic.hpp"

namespace qaaug {

namespace fs = std::filesystem;

namespace {

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "seed",
      "corpus.base",
      "corpus.cross",
      "resources.dictionary",
      "resources.phrases",
      "resources.wordnet",
      "resources.ppdb",
      "resources.glove",
      "resources.fasttext",
      "resources.neighbors",
      "sampling.quota",
      "sampling.mode",
      "sampling.per_question_total",
      "sampling.oversample",
      "sets",
      "model.epochs",
      "model.learning_rate",
      "model.l2",
      "cv.folds",
      "cv.setups",
      "rank.alpha",
      "rank.metric",
      "rank.target",
      "rank.iman_davenport",
      "quality.per_bucket",
      "quality.threshold",
      "quality.mode",
      "run.output_dir",
      "run.workers",
  };
  return keys;
}

const char* const kResourceKeys[] = {"dictionary", "phrases", "wordnet", "ppdb", "glove", "fasttext"};

Error config_error(std::string_view key, std::string_view msg) {
  return Error(ErrorCode::kConfig, fmt::format("key '{}': {}", key, msg));
}

fs::path existing_file(const KeyValueFile& kv, const fs::path& base_dir, std::string_view key) {
  const fs::path p = base_dir / kv.get_string(key);
  if (!fs::is_regular_file(p)) throw config_error(key, fmt::format("file '{}' does not exist", p.string()));
  return p;
}

// Python-style rendering: integral values keep one decimal.
std::string plain_real(double v) {
  auto s = fmt::format("{}", v);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write_manifest(const fs::path& run_dir, std::string_view command, const RunConfig* config,
                    const std::vector<std::pair<std::string, fs::path>>& inputs) {
  std::string text = fmt::format("command = {}\n", command);
  if (config != nullptr) {
    text += fmt::format("config_hash = {}\n", config->hash());
    text += fmt::format("seed = {}\n", config->seed);
  }
  for (const auto& [name, path] : inputs) {
    text += fmt::format("input.{} = {} {}\n", name, path.filename().string(), file_fingerprint(path));
  }
  write_file(run_dir / fmt::format("manifest-{}.txt", command), text);
}

std::vector<std::pair<std::string, fs::path>> config_inputs(const RunConfig& c) {
  std::vector<std::pair<std::string, fs::path>> out;
  if (!c.base_corpus.empty()) out.emplace_back("corpus.base", c.base_corpus);
  if (!c.cross_corpus.empty()) out.emplace_back("corpus.cross", c.cross_corpus);
  for (const auto& [name, path] : c.resources) out.emplace_back("resources." + name, path);
  return out;
}

Corpus require_base(const RunConfig& c) {
  if (c.base_corpus.empty()) throw config_error("corpus.base", "required for this command");
  return load_corpus(c.base_corpus);
}

Corpus require_cross(const RunConfig& c) {
  if (c.cross_corpus.empty()) throw config_error("corpus.cross", "required for this command");
  return load_corpus(c.cross_corpus);
}

// Rating files are one rater each; items are matched by pair id.
std::vector<std::vector<int>> load_rating_columns(const std::vector<std::string>& files) {
  std::vector<std::map<std::string, int>> by_file;
  for (const auto& f : files) {
    std::map<std::string, int> m;
    for (const auto& row : parse_ratings(read_file(f))) m[row.pair_id] = row.assigned;
    by_file.push_back(std::move(m));
  }
  for (std::size_t i = 1; i < by_file.size(); ++i) {
    for (const auto& [id, label] : by_file[0]) {
      if (by_file[i].count(id) == 0) {
        throw Error(ErrorCode::kMissingRater, fmt::format("pair '{}' has no rating in '{}'", id, files[i]));
      }
    }
    if (by_file[i].size() != by_file[0].size()) {
      throw Error(ErrorCode::kMissingRater, fmt::format("'{}' rates pairs missing from '{}'", files[i], files[0]));
    }
  }
  std::vector<std::vector<int>> columns(by_file.size());
  for (std::size_t i = 0; i < by_file.size(); ++i) {
    for (const auto& [id, label] : by_file[i]) columns[i].push_back(label);
  }
  return columns;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

}  // namespace

std::string RunConfig::hash() const { return hex64(fnv1a64(kv.canonical())); }

RunConfig parse_run_config(const KeyValueFile& input, const fs::path& base_dir, std::optional<std::uint64_t> seed) {
  KeyValueFile kv = input;
  if (seed) kv.set("seed", std::to_string(*seed));
  for (const auto& [key, value] : kv.values()) {
    if (known_keys().count(key) == 0) throw config_error(key, "unknown key");
  }
  RunConfig c;
  c.kv = kv;
  c.base_dir = base_dir;
  if (!kv.has("seed")) throw config_error("seed", "missing (a seed is mandatory)");
  c.seed = kv.get_u64("seed");
  if (kv.has("corpus.base")) c.base_corpus = existing_file(kv, base_dir, "corpus.base");
  if (kv.has("corpus.cross")) c.cross_corpus = existing_file(kv, base_dir, "corpus.cross");
  for (const char* name : kResourceKeys) {
    const auto key = fmt::format("resources.{}", name);
    if (kv.has(key)) c.resources[name] = existing_file(kv, base_dir, key);
  }
  const auto neighbors = kv.get_int("resources.neighbors", 10);
  if (neighbors <= 0) throw config_error("resources.neighbors", "must be positive");
  c.neighbors = static_cast<std::size_t>(neighbors);

  c.sampling.quota_per_bucket = static_cast<int>(kv.get_int("sampling.quota", 125));
  if (c.sampling.quota_per_bucket <= 0) throw config_error("sampling.quota", "must be positive");
  try {
    c.sampling.mode = parse_sampling_mode(kv.get_string("sampling.mode", "balanced_per_label"));
  } catch (const Error& e) {
    throw config_error("sampling.mode", e.what());
  }
  c.sampling.per_question_total = static_cast<int>(kv.get_int("sampling.per_question_total", 375));
  if (c.sampling.per_question_total <= 0) throw config_error("sampling.per_question_total", "must be positive");
  c.sampling.allow_oversampling = kv.get_bool("sampling.oversample", false);
  c.sampling.seed = c.seed;

  if (kv.has("sets")) {
    for (const auto& name : kv.get_list("sets")) {
      try {
        c.sets.push_back(training_set_spec(name));
      } catch (const Error& e) {
        throw config_error("sets", e.what());
      }
    }
    if (c.sets.empty()) throw config_error("sets", "empty list");
  } else {
    c.sets = all_training_sets();
  }

  c.model.epochs = static_cast<int>(kv.get_int("model.epochs", c.model.epochs));
  if (c.model.epochs <= 0) throw config_error("model.epochs", "must be positive");
  c.model.learning_rate = kv.get_double("model.learning_rate", c.model.learning_rate);
  if (!(c.model.learning_rate > 0.0)) throw config_error("model.learning_rate", "must be positive");
  c.model.l2 = kv.get_double("model.l2", c.model.l2);
  if (c.model.l2 < 0.0) throw config_error("model.l2", "must be non-negative");

  const auto folds = kv.get_int("cv.folds", 10);
  if (folds < 2) throw config_error("cv.folds", "must be at least 2");
  c.folds = static_cast<std::size_t>(folds);
  try {
    c.setups = parse_input_setups(kv.has("cv.setups") ? kv.get_list("cv.setups") : std::vector<std::string>{"qa"});
  } catch (const Error& e) {
    throw config_error("cv.setups", e.what());
  }

  c.alpha = kv.get_double("rank.alpha", 0.05);
  if (std::fabs(c.alpha - 0.05) > 1e-12 && std::fabs(c.alpha - 0.10) > 1e-12) {
    throw config_error("rank.alpha", "must be 0.05 or 0.10");
  }
  c.rank_metric = kv.get_string("rank.metric", "f1_per_q");
  if (c.rank_metric != "overall_f1" && c.rank_metric != "f1_per_q" && c.rank_metric != "std_per_q") {
    throw config_error("rank.metric", "expected overall_f1, f1_per_q or std_per_q");
  }
  const auto target = kv.get_string("rank.target", "fold-test");
  if (target == "fold-test") c.rank_target = EvalTarget::kFoldTest;
  else if (target == "cross-corpus") c.rank_target = EvalTarget::kCrossCorpus;
  else throw config_error("rank.target", "expected fold-test or cross-corpus");
  c.iman_davenport = kv.get_bool("rank.iman_davenport", false);

  c.quality_per_bucket = static_cast<int>(kv.get_int("quality.per_bucket", 5));
  if (c.quality_per_bucket <= 0) throw config_error("quality.per_bucket", "must be positive");
  c.quality_threshold = kv.get_double("quality.threshold", 90.0);
  const auto qmode = kv.get_string("quality.mode", "consensus");
  if (qmode == "consensus") c.quality_mode = QualityMode::kConsensus;
  else if (qmode == "per_rater") c.quality_mode = QualityMode::kPerRaterAverage;
  else throw config_error("quality.mode", "expected consensus or per_rater");

  c.output_dir = base_dir / kv.get_string("run.output_dir", "runs");
  const auto workers = kv.get_int("run.workers", 1);
  if (workers <= 0) throw config_error("run.workers", "must be positive");
  c.workers = static_cast<std::size_t>(workers);
  return c;
}

RunConfig load_run_config(const fs::path& path, std::optional<std::uint64_t> seed) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kConfig, fmt::format("config file '{}' does not exist", path.string()));
  }
  return parse_run_config(KeyValueFile::load(path), path.parent_path(), seed);
}

AugmentResources load_resources(const RunConfig& c) {
  AugmentResources r;
  auto path = [&](const char* name) -> const fs::path* {
    const auto it = c.resources.find(name);
    return it == c.resources.end() ? nullptr : &it->second;
  };
  if (auto p = path("dictionary")) {
    r.dictionary = std::make_shared<ContextualSynonymDictionary>(load_synonym_dictionary(*p));
  }
  if (auto p = path("phrases")) r.phrases = std::make_shared<PhraseInventory>(load_phrase_inventory(*p));
  if (auto p = path("wordnet")) r.wordnet = std::make_shared<SynonymLexicon>(load_synonym_lexicon(*p));
  if (auto p = path("ppdb")) r.ppdb = std::make_shared<SynonymLexicon>(load_synonym_lexicon(*p));
  if (auto p = path("glove")) {
    r.glove = std::make_shared<EmbeddingNeighbors>(std::make_shared<EmbeddingTable>(load_embedding_table(*p)),
                                                   c.neighbors);
  }
  if (auto p = path("fasttext")) {
    r.fasttext = std::make_shared<EmbeddingNeighbors>(std::make_shared<EmbeddingTable>(load_embedding_table(*p)),
                                                      c.neighbors);
  }
  return r;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kInsufficientBucket:
    case ErrorCode::kInsufficientCoverage:
    case ErrorCode::kUnboundResource:
    case ErrorCode::kDegenerateLabels:
    case ErrorCode::kMissingTemplate:
    case ErrorCode::kOutOfVocabulary:
      return 2;
    default:
      return 1;
  }
}

namespace {

void cmd_gen_synthetic(const Context& ctx, const fs::path& config_path, std::optional<std::uint64_t> seed,
                       const std::string& out_path, const std::string& resources_dir,
                       const std::string& output_dir) {
  if (!fs::is_regular_file(config_path)) {
    throw Error(ErrorCode::kConfig, fmt::format("config file '{}' does not exist", config_path.string()));
  }
  auto kv = KeyValueFile::load(config_path);
  if (seed) kv.set("seed", std::to_string(*seed));
  const auto gen = parse_generator_config(kv, config_path.parent_path());
  const auto templates = gen.template_path.empty() ? TemplateSet::builtin() : TemplateSet::load(gen.template_path);
  const auto corpus = generate_synthetic(gen, templates);
  const fs::path root = output_dir.empty() ? config_path.parent_path() / kv.get_string("run.output_dir", "runs")
                                           : fs::path(output_dir);
  const fs::path run_dir = root / hex64(fnv1a64(kv.canonical()));
  const fs::path target = out_path.empty() ? run_dir / (gen.name + ".csv") : fs::path(out_path);
  save_corpus(corpus, target);
  std::vector<std::pair<std::string, fs::path>> inputs{{"config", config_path}};
  if (!gen.template_path.empty()) inputs.emplace_back("templates", gen.template_path);
  fs::create_directories(run_dir);
  write_file(run_dir / "config.txt", kv.canonical());
  write_manifest(run_dir, "gen-synthetic", nullptr, inputs);
  ctx.out << fmt::format("wrote {} records to {}\n", corpus.size(), target.string());
  if (!resources_dir.empty()) {
    write_fixture_resources(templates, resources_dir, gen.seed);
    ctx.out << fmt::format("wrote augmentation resources to {}\n", resources_dir);
  }
}

void prepare_run_dir(const RunConfig& c, std::string_view command) {
  fs::create_directories(c.run_dir());
  write_file(c.run_dir() / "config.txt", c.kv.canonical());
  write_manifest(c.run_dir(), command, &c, config_inputs(c));
}

void cmd_top_words(const Context& ctx, const RunConfig& c, int question, std::size_t k, bool stopwords) {
  const auto base = require_base(c);
  prepare_run_dir(c, "top-words");
  const auto top = extract_top_words(base, question, k, stopwords ? &bundled_stopwords() : nullptr);
  std::string text;
  for (std::size_t i = 0; i < top.words.size(); ++i) text += fmt::format("{}\t{}\n", top.words[i], top.counts[i]);
  write_file(c.run_dir() / "top_words" / fmt::format("q{}.tsv", question), text);
  ctx.out << text;
  if (top.short_list) ctx.err << fmt::format("warning: only {} distinct words for question {}\n", top.words.size(), question);
}

void cmd_augment(const Context& ctx, const RunConfig& c, const std::string& chain_text) {
  const auto chain = parse_chain(chain_text);
  const auto base = require_base(c);
  const auto resources = load_resources(c);
  prepare_run_dir(c, "augment");
  const TrainingSetSpec spec{chain_name(chain), {chain}, false};
  BuildReport report;
  const auto built = build_recipe(base, Corpus{}, spec, resources, c.sampling, c.seed, &report);
  std::vector<QAPair> augmented;
  for (const auto& r : built.records()) {
    if (r.is_augmented()) augmented.push_back(r);
  }
  const Corpus out(spec.name, std::move(augmented));
  const auto path = c.run_dir() / "augment" / (spec.name + ".csv");
  save_corpus(out, path);
  ctx.out << fmt::format("{}: {} augmented records ({} skipped and resampled) -> {}\n", spec.name, out.size(),
                         report.skipped, path.string());
  for (const auto& u : report.unmet) {
    ctx.err << fmt::format("warning: bucket {} reached {} of {}\n", u.bucket.str(), u.achieved, u.wanted);
  }
}

void cmd_build_sets(const Context& ctx, const RunConfig& c) {
  const auto base = require_base(c);
  const bool needs_cross =
      std::any_of(c.sets.begin(), c.sets.end(), [](const TrainingSetSpec& s) { return s.uses_cross_corpus; });
  const Corpus cross = needs_cross ? require_cross(c) : Corpus{};
  const auto resources = load_resources(c);
  prepare_run_dir(c, "build-sets");
  std::string sizes = csv_line({"training_set", "records"});
  for (const auto& spec : c.sets) {
    BuildReport report;
    const auto built = build_recipe(base, cross, spec, resources, c.sampling, c.seed, &report);
    save_corpus(built, c.run_dir() / "sets" / (spec.name + ".csv"));
    sizes += csv_line({spec.name, std::to_string(built.size())});
    ctx.out << fmt::format("{:<10} {:>7}\n", spec.name, built.size());
    for (const auto& u : report.unmet) {
      ctx.err << fmt::format("warning: {} {} bucket {} reached {} of {}\n", spec.name, u.component, u.bucket.str(),
                             u.achieved, u.wanted);
    }
  }
  write_file(c.run_dir() / "sets" / "sizes.csv", sizes);
}

void cmd_quality_export(const Context& ctx, const RunConfig& c) {
  const auto base = require_base(c);
  const auto resources = load_resources(c);
  prepare_run_dir(c, "quality-export");
  std::vector<std::pair<Strategy, Corpus>> sets;
  for (auto s : kAllStrategies) {
    const TrainingSetSpec spec{std::string(to_string(s)), {{s}}, false};
    sets.emplace_back(s, build_recipe(base, Corpus{}, spec, resources, c.sampling, c.seed));
  }
  const auto exp = export_quality_sample(base, sets, c.quality_per_bucket, derive_seed(c.seed, "quality", ""));
  write_file(c.run_dir() / "quality" / "annotator.csv", exp.annotator_csv);
  write_file(c.run_dir() / "quality" / "key.csv", exp.key_csv);
  ctx.out << fmt::format("exported {} pairs\n", exp.rows);
  for (const auto& [name, n] : exp.per_strategy) ctx.out << fmt::format("  {:<10} {}\n", name, n);
}

void cmd_quality_report(const Context& ctx, const RunConfig& c, const std::string& annotations,
                        const std::string& key, const std::vector<std::string>& rating_files) {
  std::vector<RatingRow> ratings;
  for (const auto& f : rating_files) {
    auto rows = parse_ratings(read_file(f));
    ratings.insert(ratings.end(), rows.begin(), rows.end());
  }
  const auto joined = join_annotations(read_file(annotations), read_file(key), ratings);
  const auto report = compute_quality_report(joined, c.quality_threshold, c.quality_mode);
  fs::create_directories(c.run_dir());
  std::vector<std::pair<std::string, fs::path>> inputs{{"annotations", annotations}, {"key", key}};
  for (std::size_t i = 0; i < rating_files.size(); ++i) inputs.emplace_back(fmt::format("ratings{}", i), rating_files[i]);
  write_manifest(c.run_dir(), "quality-report", &c, inputs);
  const auto text = format_quality_report(report);
  write_file(c.run_dir() / "quality" / "report.csv", text);
  ctx.out << text;
}

void cmd_kappa(const Context& ctx, const std::vector<std::string>& files) {
  if (files.size() < 2) throw Error(ErrorCode::kInvalidArgument, "kappa needs at least two rating files");
  const auto columns = load_rating_columns(files);
  if (columns[0].empty()) throw Error(ErrorCode::kEmptyInput, "no ratings");
  if (files.size() == 2) {
    ctx.out << plain_real(cohen_kappa(columns[0], columns[1])) << "\n";
    return;
  }
  std::vector<std::vector<int>> counts(columns[0].size(), std::vector<int>(kInvalidLabel + 1, 0));
  for (const auto& col : columns) {
    for (std::size_t i = 0; i < col.size(); ++i) ++counts[i][static_cast<std::size_t>(col[i])];
  }
  ctx.out << plain_real(fleiss_kappa(counts)) << "\n";
}

void emit_ranking(const Context& ctx, const fs::path& dir, const RankingResult& r, bool svg) {
  write_file(dir / "ranking.csv", serialize_ranking(r));
  if (svg) write_file(dir / "cd.svg", render_cd_svg(r));
  ctx.out << fmt::format("Friedman chi2 = {:.4f}, p = {:.4g}, CD = {:.4f}\n", r.statistic, r.p_value, r.cd);
}

void cmd_cv(const Context& ctx, const RunConfig& c) {
  const auto base = require_base(c);
  const auto cross = require_cross(c);
  const auto resources = load_resources(c);
  prepare_run_dir(c, "cv");
  ExperimentConfig ec;
  ec.folds = c.folds;
  ec.seed = c.seed;
  ec.sampling = c.sampling;
  ec.model = c.model;
  ec.setups = c.setups;
  ec.workers = c.workers;
  const auto dir = c.run_dir() / "cv";
  const auto result = run_experiment(base, cross, c.sets, resources, ec);
  for (const auto& setup : c.setups) {
    write_file(dir / fmt::format("report_{}.csv", setup.name), format_fold_report(result, setup.name));
    const auto md = format_aggregate_markdown(result, setup.name);
    write_file(dir / fmt::format("summary_{}.md", setup.name), md);
    ctx.out << md << "\n";
  }
  std::string sizes = csv_line({"training_set", "records"});
  for (const auto& name : result.training_sets) sizes += csv_line({name, std::to_string(result.built_sizes.at(name))});
  write_file(dir / "sizes.csv", sizes);
  write_file(dir / "leakage_audit.txt",
             fmt::format("cells = {}\nremoved = {}\nviolations = {}\n", result.audit.cells, result.audit.removed,
                         result.audit.violations));
  ctx.out << fmt::format("leakage audit: {} cells, {} records removed, {} violations\n", result.audit.cells,
                         result.audit.removed, result.audit.violations);
  const auto matrix = build_rank_matrix(result, c.rank_target, c.rank_metric);
  write_file(dir / "rank_matrix.csv", serialize_rank_matrix(matrix));
  if (matrix.k() >= 3 && matrix.n() >= 2) {
    const auto ranking = rank_treatments(matrix, c.alpha, c.iman_davenport);
    emit_ranking(ctx, dir, ranking, true);
    ctx.out << render_cd_ascii(ranking);
  }
  if (result.audit.violations != 0) {
    throw Error(ErrorCode::kBrokenProvenance, fmt::format("{} leaked records", result.audit.violations));
  }
}

RankMatrix load_matrix(const RunConfig& c, const std::string& matrix_path) {
  const fs::path p = matrix_path.empty() ? c.run_dir() / "cv" / "rank_matrix.csv" : fs::path(matrix_path);
  if (!fs::is_regular_file(p)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("rank matrix '{}' does not exist", p.string()));
  }
  return parse_rank_matrix(read_file(p), c.rank_metric != "std_per_q");
}

void cmd_rank(const Context& ctx, const RunConfig& c, const std::string& matrix_path, bool svg) {
  const auto m = load_matrix(c, matrix_path);
  const auto r = rank_treatments(m, c.alpha, c.iman_davenport);
  const auto dir = c.run_dir() / "rank";
  fs::create_directories(dir);
  emit_ranking(ctx, dir, r, svg);
  if (c.iman_davenport) {
    const auto f = friedman_test(m, true);
    ctx.out << fmt::format("Iman-Davenport F = {:.4f}, p = {:.4g}\n", f.f_statistic, f.f_p_value);
  }
  ctx.out << render_cd_ascii(r);
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Context ctx{out, err};
  CLI::App app{"Data augmentation and evaluation toolkit for question-answer scoring corpora", "qaaug"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "Configuration file");
    if (config_required) opt->required();
    sub->add_option("--seed", seed, "Override the configured master seed");
    sub->add_option("--output-dir", output_dir, "Override run.output_dir");
  };

  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic corpus");
  add_common(gen, true);
  std::string gen_out, gen_resources;
  gen->add_option("--out", gen_out, "Corpus path (default: inside the run directory)");
  gen->add_option("--resources", gen_resources, "Also write matching augmentation resources to this directory");

  auto* top = app.add_subcommand("top-words", "Most frequent words of one question");
  add_common(top, true);
  int top_q = 1;
  std::size_t top_k = 10;
  bool top_stop = false;
  top->add_option("--question", top_q, "Question id")->required()->check(CLI::Range(kMinQuestion, kMaxQuestion));
  top->add_option("--k", top_k, "Number of words");
  top->add_flag("--stopwords", top_stop, "Exclude the bundled stopword list");

  auto* aug = app.add_subcommand("augment", "Apply one strategy (or chain) to the stratified sample");
  add_common(aug, true);
  std::string aug_strategy;
  aug->add_option("--strategy", aug_strategy, "Strategy name or chain such as dictionary+phrase")->required();

  auto* build = app.add_subcommand("build-sets", "Build every configured training set");
  add_common(build, true);

  auto* qexp = app.add_subcommand("quality-export", "Export augmented pairs for expert re-rating");
  add_common(qexp, true);

  auto* qrep = app.add_subcommand("quality-report", "Summarise expert ratings per strategy");
  add_common(qrep, false);
  std::string q_ann, q_key;
  std::vector<std::string> q_ratings;
  qrep->add_option("--annotations", q_ann, "Annotator file from quality-export")->required()->check(CLI::ExistingFile);
  qrep->add_option("--key", q_key, "Key file from quality-export")->required()->check(CLI::ExistingFile);
  qrep->add_option("--ratings", q_ratings, "Rating files")->required()->check(CLI::ExistingFile);

  auto* kap = app.add_subcommand("kappa", "Agreement between rating files (Cohen for two, Fleiss for more)");
  std::vector<std::string> kappa_files;
  kap->add_option("files", kappa_files, "Rating files, one rater each")->required()->check(CLI::ExistingFile);

  auto* cv = app.add_subcommand("cv", "Cross-validate every configured training set");
  add_common(cv, true);

  auto* rank = app.add_subcommand("rank", "Friedman test and Nemenyi critical difference");
  add_common(rank, false);
  std::string rank_matrix;
  rank->add_option("--matrix", rank_matrix, "Rank matrix CSV (default: the cv output)");

  auto* cdd = app.add_subcommand("cd-diagram", "Critical difference diagram as SVG and text");
  add_common(cdd, false);
  std::string cd_matrix;
  cdd->add_option("--matrix", cd_matrix, "Rank matrix CSV (default: the cv output)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    auto run_config = [&]() {
      RunConfig c = config_path.empty() ? parse_run_config(KeyValueFile::parse("seed = 0"), fs::current_path(), seed)
                                        : load_run_config(config_path, seed);
      if (!output_dir.empty()) c.output_dir = output_dir;
      return c;
    };
    if (*gen) {
      cmd_gen_synthetic(ctx, config_path, seed, gen_out, gen_resources, output_dir);
    } else if (*top) {
      cmd_top_words(ctx, run_config(), top_q, top_k, top_stop);
    } else if (*aug) {
      cmd_augment(ctx, run_config(), aug_strategy);
    } else if (*build) {
      cmd_build_sets(ctx, run_config());
    } else if (*qexp) {
      cmd_quality_export(ctx, run_config());
    } else if (*qrep) {
      cmd_quality_report(ctx, run_config(), q_ann, q_key, q_ratings);
    } else if (*kap) {
      cmd_kappa(ctx, kappa_files);
    } else if (*cv) {
      cmd_cv(ctx, run_config());
    } else if (*rank) {
      cmd_rank(ctx, run_config(), rank_matrix, false);
    } else if (*cdd) {
      cmd_rank(ctx, run_config(), cd_matrix, true);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qaaug
