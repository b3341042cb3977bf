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

#include <sstream>

#include <fmt/format.h>

#include "qaaug/cli.hpp"
#include "qaaug/hash.hpp"
#include "qaaug/quality.hpp"
#include "qaaug/text_io.hpp"
#include "support.hpp"

using namespace qaaug;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli_dispatch(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string fixture_path(const std::string& name) { return test::fixture(name).string(); }

// Config over the 100-per-bucket fixture with absolute paths.
std::string small_config(const std::string& extra) {
  std::string text = fmt::format("seed = 5\ncorpus.base = {}\ncorpus.cross = {}\n", fixture_path("cv_base.csv"),
                                 fixture_path("cv_cross.csv"));
  for (const auto& [key, file] : std::vector<std::pair<std::string, std::string>>{{"dictionary", "dictionary.tsv"},
                                                                                  {"phrases", "phrases.txt"},
                                                                                  {"wordnet", "wordnet.tsv"},
                                                                                  {"ppdb", "ppdb.tsv"},
                                                                                  {"glove", "glove.txt"},
                                                                                  {"fasttext", "fasttext.vec"}}) {
    text += fmt::format("resources.{} = {}\n", key, fixture_path("resources/" + file));
  }
  return text + "sampling.quota = 5\n" + extra;
}

fs::path only_run_dir(const fs::path& root) {
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  REQUIRE(dirs.size() == 1);
  return dirs.front();
}

}  // namespace

TEST_CASE("argument and config validation") {
  test::TempDir dir("cli-args");
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"build-sets"}).code == 1);

  write_file(dir / "noseed.cfg", "corpus.base = x.csv\n");
  auto o = run({"build-sets", "--config", (dir / "noseed.cfg").string()});
  CHECK(o.code == 1);
  CHECK(o.err.find("key 'seed'") != std::string::npos);

  write_file(dir / "unknown.cfg", "seed = 1\nmodel.depth = 3\n");
  o = run({"build-sets", "--config", (dir / "unknown.cfg").string()});
  CHECK(o.code == 1);
  CHECK(o.err.find("key 'model.depth': unknown key") != std::string::npos);

  write_file(dir / "missing.cfg", "seed = 1\ncorpus.base = nowhere.csv\n");
  o = run({"build-sets", "--config", (dir / "missing.cfg").string()});
  CHECK(o.code == 1);
  CHECK(o.err.find("key 'corpus.base'") != std::string::npos);

  write_file(dir / "bad.cfg", "seed = 1\ncv.folds = 1\n");
  CHECK(run({"cv", "--config", (dir / "bad.cfg").string()}).code == 1);
  CHECK(run({"build-sets", "--config", (dir / "absent.cfg").string()}).code == 1);
}

TEST_CASE("runtime failures exit with 2") {
  test::TempDir dir("cli-runtime");
  write_file(dir / "big.cfg", fmt::format("seed = 1\ncorpus.base = {}\nsampling.quota = 500\n", fixture_path("cv_base.csv")));
  auto o = run({"augment", "--config", (dir / "big.cfg").string(), "--strategy", "order", "--output-dir",
                (dir / "out").string()});
  CHECK(o.code == 2);
  write_file(dir / "nores.cfg", fmt::format("seed = 1\ncorpus.base = {}\nsampling.quota = 2\n", fixture_path("cv_base.csv")));
  o = run({"augment", "--config", (dir / "nores.cfg").string(), "--strategy", "glove", "--output-dir",
           (dir / "out").string()});
  CHECK(o.code == 2);
  CHECK(o.err.find("glove") != std::string::npos);
}

TEST_CASE("kappa subcommand") {
  test::TempDir dir("cli-kappa");
  const std::vector<RatingRow> a{{"p1", "r1", 0}, {"p2", "r1", 1}, {"p3", "r1", 2}, {"p4", "r1", kInvalidLabel}};
  write_file(dir / "a.csv", serialize_ratings(a));
  write_file(dir / "b.csv", serialize_ratings(a));
  auto o = run({"kappa", (dir / "a.csv").string(), (dir / "b.csv").string()});
  CHECK(o.code == 0);
  CHECK(o.out == "1.0\n");

  auto c = a;
  c[0].assigned = 1;
  write_file(dir / "c.csv", serialize_ratings(c));
  o = run({"kappa", (dir / "a.csv").string(), (dir / "b.csv").string(), (dir / "c.csv").string()});
  CHECK(o.code == 0);
  std::vector<std::vector<int>> counts{{2, 1, 0, 0}, {0, 3, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 3}};
  CHECK(std::stod(o.out) == doctest::Approx(fleiss_kappa(counts)).epsilon(1e-12));

  write_file(dir / "short.csv", serialize_ratings({a[0]}));
  CHECK(run({"kappa", (dir / "a.csv").string(), (dir / "short.csv").string()}).code == 1);
}

TEST_CASE("gen-synthetic") {
  test::TempDir dir("cli-gen");
  write_file(dir / "g.gen", "name = tiny\nseed = 3\ncount = 4\n");
  auto o = run({"gen-synthetic", "--config", (dir / "g.gen").string(), "--output-dir", (dir / "out").string(),
                "--resources", (dir / "res").string()});
  REQUIRE(o.code == 0);
  const auto run_dir = only_run_dir(dir / "out");
  const auto corpus = load_corpus(run_dir / "tiny.csv");
  CHECK(corpus.size() == 33 * 4);
  CHECK(fs::is_regular_file(run_dir / "manifest-gen-synthetic.txt"));
  CHECK(fs::is_regular_file(dir / "res" / "dictionary.tsv"));

  auto again = run({"gen-synthetic", "--config", (dir / "g.gen").string(), "--out", (dir / "copy.csv").string()});
  REQUIRE(again.code == 0);
  CHECK(read_file(dir / "copy.csv") == read_file(run_dir / "tiny.csv"));
}

TEST_CASE("build-sets, augment, top-words and the run directory") {
  test::TempDir dir("cli-build");
  write_file(dir / "b.cfg", small_config("sets = orig,phrase,all-hq,uk-20\n"));
  const auto config_before = read_file(dir / "b.cfg");
  const auto out_root = dir / "out";

  auto o = run({"build-sets", "--config", (dir / "b.cfg").string(), "--output-dir", out_root.string()});
  REQUIRE(o.code == 0);
  const auto run_dir = only_run_dir(out_root);
  CHECK(read_file(run_dir / "sets" / "sizes.csv") ==
        fmt::format("training_set,records\norig,3300\nphrase,{}\nall-hq,{}\nuk-20,1320\n", 3300 + 165, 3300 + 7 * 165));
  CHECK(load_corpus(run_dir / "sets" / "all-hq.csv").size() == 3300 + 7 * 165);

  // The run directory is named by the hash of the canonical config.
  const auto canonical = read_file(run_dir / "config.txt");
  CHECK(run_dir.filename().string() == hex64(fnv1a64(canonical)));
  const auto manifest = read_file(run_dir / "manifest-build-sets.txt");
  CHECK(manifest.find("command = build-sets\n") != std::string::npos);
  CHECK(manifest.find("config_hash = " + run_dir.filename().string() + "\n") != std::string::npos);
  CHECK(manifest.find("seed = 5\n") != std::string::npos);
  CHECK(manifest.find("input.corpus.base = cv_base.csv ") != std::string::npos);
  CHECK(manifest.find("input.resources.glove = glove.txt ") != std::string::npos);
  CHECK(read_file(dir / "b.cfg") == config_before);

  SUBCASE("--seed moves the run directory") {
    REQUIRE(run({"top-words", "--config", (dir / "b.cfg").string(), "--seed", "6", "--output-dir",
                 out_root.string(), "--question", "3", "--k", "4"})
                .code == 0);
    std::size_t dirs = 0;
    for (const auto& e : fs::directory_iterator(out_root)) dirs += e.is_directory() ? 1 : 0;
    CHECK(dirs == 2);
  }
  SUBCASE("top-words") {
    o = run({"top-words", "--config", (dir / "b.cfg").string(), "--output-dir", out_root.string(), "--question",
             "2", "--k", "5", "--stopwords"});
    REQUIRE(o.code == 0);
    CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 5);
    CHECK(read_file(run_dir / "top_words" / "q2.tsv") == o.out);
    CHECK(run({"top-words", "--config", (dir / "b.cfg").string(), "--question", "12"}).code == 1);
  }
  SUBCASE("augment writes only augmented records") {
    o = run({"augment", "--config", (dir / "b.cfg").string(), "--output-dir", out_root.string(), "--strategy",
             "dictionary+phrase"});
    REQUIRE(o.code == 0);
    const auto aug = load_corpus(run_dir / "augment" / "dictionary+phrase.csv");
    CHECK(aug.size() == 165);
    for (const auto& r : aug.records()) CHECK(r.strategy_chain.size() >= 1);
    CHECK(run({"augment", "--config", (dir / "b.cfg").string(), "--strategy", "bert"}).code == 1);
  }
}

TEST_CASE("quality-export and quality-report") {
  test::TempDir dir("cli-quality");
  write_file(dir / "q.cfg", small_config(""));
  const auto out_root = dir / "out";
  auto o = run({"quality-export", "--config", (dir / "q.cfg").string(), "--output-dir", out_root.string()});
  REQUIRE(o.code == 0);
  const auto qdir = only_run_dir(out_root) / "quality";
  const auto annot = parse_csv(read_file(qdir / "annotator.csv"));
  CHECK(annot.size() == 1 + 1155);

  std::vector<RatingRow> r1, r2;
  for (std::size_t i = 1; i < annot.size(); ++i) {
    const int label = std::stoi(annot[i].fields[4]);
    r1.push_back({annot[i].fields[0], "r1", label});
    r2.push_back({annot[i].fields[0], "r2", i % 10 == 0 ? kInvalidLabel : label});
  }
  write_file(dir / "r1.csv", serialize_ratings(r1));
  write_file(dir / "r2.csv", serialize_ratings(r2));
  o = run({"quality-report", "--config", (dir / "q.cfg").string(), "--output-dir", out_root.string(),
           "--annotations", (qdir / "annotator.csv").string(), "--key", (qdir / "key.csv").string(), "--ratings",
           (dir / "r1.csv").string(), (dir / "r2.csv").string()});
  REQUIRE(o.code == 0);
  CHECK(read_file(qdir / "report.csv") == o.out);
  CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 8);

  o = run({"quality-report", "--output-dir", (dir / "bare").string(), "--annotations",
           (qdir / "annotator.csv").string(), "--key", (qdir / "key.csv").string(), "--ratings",
           (dir / "r1.csv").string()});
  CHECK(o.code == 0);
  CHECK(o.out.find(",100.00,0.00,0.00,HQ") != std::string::npos);
}

TEST_CASE("cv is byte-identical across runs and feeds rank and cd-diagram") {
  test::TempDir dir("cli-cv");
  write_file(dir / "cv.cfg", small_config("sets = orig,uk-20,phrase,dict,order\ncv.folds = 3\nmodel.epochs = 3\n"
                                          "cv.setups = qa,a\nrun.workers = 3\n"));
  auto first = run({"cv", "--config", (dir / "cv.cfg").string(), "--output-dir", (dir / "one").string()});
  REQUIRE(first.code == 0);
  auto second = run({"cv", "--config", (dir / "cv.cfg").string(), "--output-dir", (dir / "two").string()});
  REQUIRE(second.code == 0);
  CHECK(first.out == second.out);

  const auto a = only_run_dir(dir / "one") / "cv";
  const auto b = only_run_dir(dir / "two") / "cv";
  for (const char* f : {"report_qa.csv", "report_a.csv", "summary_qa.md", "summary_a.md", "sizes.csv",
                        "leakage_audit.txt", "rank_matrix.csv", "ranking.csv", "cd.svg"}) {
    CAPTURE(f);
    REQUIRE(fs::is_regular_file(a / f));
    CHECK(read_file(a / f) == read_file(b / f));
  }
  CHECK(read_file(a / "leakage_audit.txt").find("violations = 0\n") != std::string::npos);
  const auto report = parse_csv(read_file(a / "report_qa.csv"));
  CHECK(report.size() == 1 + 5 * 3 * 2);

  auto r = run({"rank", "--config", (dir / "cv.cfg").string(), "--output-dir", (dir / "one").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Friedman chi2 = ") == 0);
  const auto rank_dir = only_run_dir(dir / "one") / "rank";
  CHECK(read_file(rank_dir / "ranking.csv") == read_file(a / "ranking.csv"));
  CHECK_FALSE(fs::exists(rank_dir / "cd.svg"));

  r = run({"cd-diagram", "--config", (dir / "cv.cfg").string(), "--output-dir", (dir / "one").string()});
  REQUIRE(r.code == 0);
  CHECK(read_file(rank_dir / "cd.svg") == read_file(a / "cd.svg"));

  r = run({"rank", "--matrix", (a / "rank_matrix.csv").string(), "--output-dir", (dir / "three").string()});
  CHECK(r.code == 0);
  r = run({"rank", "--matrix", (dir / "none.csv").string()});
  CHECK(r.code == 1);
}
