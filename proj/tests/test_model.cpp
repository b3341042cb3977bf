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

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "qaaug/model.hpp"
#include "qaaug/rng.hpp"
#include "support.hpp"

using namespace qaaug;
using qaaug::test::pair;

namespace {

// Three classes with disjoint vocabularies, spread over all questions.
Corpus separable_corpus(std::size_t per_class, std::uint64_t seed) {
  const std::vector<std::vector<std::string>> vocab{
      {"no", "nothing", "dunno", "nope"}, {"maybe", "partly", "some", "kind"}, {"because", "since", "therefore", "so"}};
  Rng rng(seed);
  std::vector<QAPair> records;
  for (int label = 0; label < 3; ++label) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::string answer;
      const auto words = 1 + rng.below(3);
      for (std::uint64_t w = 0; w < words; ++w) {
        if (w > 0) answer += ' ';
        answer += vocab[static_cast<std::size_t>(label)][rng.below(4)];
      }
      records.push_back(pair(fmt::format("t{}-{}", label, i), 1 + static_cast<int>(rng.below(11)), answer, label));
    }
  }
  return Corpus("toy", std::move(records));
}

SparseVector random_row(Rng& rng, std::size_t dim) {
  SparseVector x;
  for (std::uint32_t j = 0; j < dim; ++j) {
    if (rng.bernoulli(0.6)) x.entries.emplace_back(j, 1.0 + static_cast<double>(rng.below(3)));
  }
  return x;
}

// Plain SGD with explicit weight decay, written without the scaling trick.
LinearModel reference_sgd(const std::vector<SparseVector>& xs, const std::vector<int>& labels, std::size_t dim,
                          const ModelConfig& cfg) {
  LinearModel m(dim);
  std::vector<std::size_t> order(xs.size());
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto rng = substream(cfg.seed, "epoch", std::to_string(epoch));
    rng.shuffle(std::span<std::size_t>(order));
    const double eta = cfg.learning_rate / std::sqrt(static_cast<double>(epoch));
    for (auto i : order) {
      std::array<double, kNumLabels> s{};
      for (int c = 0; c < kNumLabels; ++c) {
        double acc = 0.0;
        for (const auto& [j, xv] : xs[i].entries) acc += m.weight(c, j) * xv;
        s[static_cast<std::size_t>(c)] = acc + m.bias(c);
      }
      const auto p = softmax(s);
      if (cfg.l2 > 0.0) {
        for (int c = 0; c < kNumLabels; ++c) {
          for (std::size_t j = 0; j < dim; ++j) m.weight(c, j) *= 1.0 - eta * cfg.l2;
        }
      }
      for (int c = 0; c < kNumLabels; ++c) {
        const double g = p[static_cast<std::size_t>(c)] - (labels[i] == c ? 1.0 : 0.0);
        for (const auto& [j, xv] : xs[i].entries) m.weight(c, j) -= eta * g * xv;
        m.bias(c) -= eta * g;
      }
    }
  }
  return m;
}

}  // namespace

TEST_CASE("featurize") {
  SUBCASE("empty vocabulary keeps the question indicator") {
    const auto space = FeatureSpace::from_features({});
    const auto x = space.featurize(pair("p", 4, "the men hid", 0));
    REQUIRE(x.entries.size() == 1);
    CHECK(x.entries[0] == std::pair<std::uint32_t, double>{3, 1.0});
    CHECK(space.feature_name(3) == "q=4");
    CHECK(space.dimension() == 11);
  }
  SUBCASE("known features only") {
    const auto space = FeatureSpace::from_features({"w=the", "w=men", "b=the men"});
    const auto x = space.featurize(pair("p", 2, "the men hid", 0));
    REQUIRE(x.entries.size() == 4);
    CHECK(x.entries[0].first == 0);
    CHECK(x.entries[1].first == 1);
    CHECK(x.entries[2].first == 2);
    CHECK(space.feature_name(x.entries[3].first) == "q=2");
  }
  SUBCASE("enumeration of unigrams, bigrams and crosses") {
    const auto p = pair("p", 2, "the men hid", 0);
    const auto space = FeatureSpace::build(Corpus("c", {p}));
    const std::set<std::string> expected{"w=the", "w=men", "w=hid", "b=the men", "b=men hid",
                                         "qw=2:the", "qw=2:men", "qw=2:hid"};
    CHECK(std::set<std::string>(space.features().begin(), space.features().end()) == expected);
    CHECK(space.featurize(p).entries.size() == expected.size() + 1);
  }
  SUBCASE("repeated tokens are counted") {
    const auto space = FeatureSpace::from_features({"w=no"}, false);
    const auto x = space.featurize(pair("p", 1, "no no no", 0));
    REQUIRE(x.entries.size() == 1);
    CHECK(x.entries[0].second == 3.0);
    CHECK(space.dimension() == 1);
  }
  SUBCASE("answer-only setup drops question features") {
    const auto space = FeatureSpace::build(Corpus("c", {pair("p", 2, "the men hid", 0)}), false);
    CHECK(space.vocabulary_size() == 5);
    for (const auto& f : space.features()) CHECK(f.rfind("qw=", 0) != 0);
  }
  SUBCASE("purity") {
    const auto space = FeatureSpace::build(separable_corpus(5, 1));
    CHECK(space.featurize(pair("a", 3, "maybe no", 0)) == space.featurize(pair("b", 3, "maybe no", 2)));
  }
}

TEST_CASE("the feature space holds only training features") {
  const auto corpus = separable_corpus(20, 3);
  std::set<std::string> seen;
  for (const auto& p : corpus.records()) {
    for (const auto& f : FeatureSpace::answer_features(p, true)) seen.insert(f);
  }
  const auto space = FeatureSpace::build(corpus);
  CHECK(space.vocabulary_size() == seen.size());
  for (const auto& f : space.features()) CHECK(seen.count(f) == 1);
  CHECK_FALSE(space.contains("w=elephant"));
}

TEST_CASE("separable toy set") {
  const auto corpus = separable_corpus(30, 7);
  ModelConfig cfg;
  cfg.epochs = 20;
  cfg.seed = 11;
  const auto m = train(corpus, cfg);
  for (const auto& p : corpus.records()) CHECK(m.predict(p) == p.label);
  REQUIRE(m.stats.epoch_loss.size() == 20);
  for (std::size_t e = 1; e < m.stats.epoch_loss.size(); ++e) {
    CHECK(m.stats.epoch_loss[e] <= m.stats.epoch_loss[e - 1] + 1e-12);
  }
  for (const auto& p : corpus.records()) {
    const auto prob = m.predict_proba(p);
    double sum = 0.0;
    for (double v : prob) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("training is deterministic") {
  const auto corpus = separable_corpus(15, 2);
  ModelConfig cfg;
  cfg.seed = 5;
  const auto a = train(corpus, cfg);
  const auto b = train(corpus, cfg);
  CHECK(a.model == b.model);
  cfg.seed = 6;
  const auto c = train(corpus, cfg);
  CHECK_FALSE(a.model == c.model);
}

TEST_CASE("SGD matches a plain reference implementation") {
  Rng rng(123);
  std::vector<SparseVector> xs;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    xs.push_back(random_row(rng, 6));
    labels.push_back(static_cast<int>(rng.below(3)));
  }
  ModelConfig cfg;
  cfg.epochs = 7;
  cfg.seed = 9;
  SUBCASE("l2 = 0 reproduces unregularised updates exactly") {
    cfg.l2 = 0.0;
    CHECK(train_rows(xs, labels, 6, cfg) == reference_sgd(xs, labels, 6, cfg));
  }
  SUBCASE("l2 > 0 matches explicit decay") {
    cfg.l2 = 0.05;
    const auto a = train_rows(xs, labels, 6, cfg);
    const auto b = reference_sgd(xs, labels, 6, cfg);
    for (int c = 0; c < kNumLabels; ++c) {
      CHECK(a.bias(c) == doctest::Approx(b.bias(c)).epsilon(1e-10));
      for (std::size_t j = 0; j < 6; ++j) CHECK(a.weight(c, j) == doctest::Approx(b.weight(c, j)).epsilon(1e-9));
    }
  }
}

TEST_CASE("analytic gradient matches central differences") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed + 50);
    const std::size_t dim = 5;
    std::vector<SparseVector> xs;
    std::vector<int> labels;
    for (int i = 0; i < 8; ++i) {
      xs.push_back(random_row(rng, dim));
      labels.push_back(static_cast<int>(rng.below(3)));
    }
    LinearModel m(dim);
    for (int c = 0; c < kNumLabels; ++c) {
      m.bias(c) = rng.unit() - 0.5;
      for (std::size_t j = 0; j < dim; ++j) m.weight(c, j) = 2.0 * rng.unit() - 1.0;
    }
    const double l2 = 0.3;
    const auto [gw, gb] = m.gradient(xs, labels, l2);
    const double h = 1e-5;
    auto check = [&](double& param, double analytic) {
      const double saved = param;
      param = saved + h;
      const double up = m.objective(xs, labels, l2);
      param = saved - h;
      const double down = m.objective(xs, labels, l2);
      param = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double rel = std::abs(analytic - numeric) / std::max(1e-3, std::abs(analytic) + std::abs(numeric));
      CHECK(rel < 1e-6);
    };
    for (int c = 0; c < kNumLabels; ++c) {
      check(m.bias(c), gb[static_cast<std::size_t>(c)]);
      for (std::size_t j = 0; j < dim; ++j) check(m.weight(c, j), gw[static_cast<std::size_t>(c) * dim + j]);
    }
  }
}

TEST_CASE("prediction basics") {
  const LinearModel zero(4);
  const SparseVector x{{{0, 1.0}, {2, 3.0}}};
  const auto p = zero.predict_proba(x);
  for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(zero.predict(x) == 0);
  CHECK(argmax({1.0, 2.0, 2.0}) == 1);

  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const std::array<double, kNumLabels> s{rng.unit() * 50 - 25, rng.unit() * 50 - 25, rng.unit() * 50 - 25};
    const double shift = rng.unit() * 1000 - 500;
    const auto a = softmax(s);
    const auto b = softmax({s[0] + shift, s[1] + shift, s[2] + shift});
    for (std::size_t c = 0; c < 3; ++c) CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-9));
    CHECK(std::abs(a[0] + a[1] + a[2] - 1.0) < 1e-12);
  }
  const auto extreme = softmax({1000.0, -1000.0, 0.0});
  CHECK(std::isfinite(extreme[0]));
  CHECK(extreme[0] == doctest::Approx(1.0));
}

TEST_CASE("model serialization round trip") {
  const auto corpus = separable_corpus(10, 8);
  ModelConfig cfg;
  cfg.epochs = 5;
  const auto m = train(corpus, cfg);
  const auto text = serialize_model(m.space, m.model);
  const auto back = parse_model(text);
  CHECK(back.model == m.model);
  CHECK(back.space.features() == m.space.features());
  CHECK(back.space.use_question() == m.space.use_question());
  CHECK(serialize_model(back.space, back.model) == text);

  test::TempDir dir("model");
  save_model(m, dir / "m.txt");
  CHECK(load_model(dir / "m.txt").model == m.model);

  CHECK_ERROR(parse_model("something else\n"), ErrorCode::kSchema);
  CHECK_ERROR(parse_model("qaaug-linear-model 1\n"), ErrorCode::kParse);
}

TEST_CASE("training errors") {
  const Corpus one("c", {pair("a", 1, "yes", 1), pair("b", 2, "no", 1)});
  CHECK_ERROR(train(one, {}), ErrorCode::kDegenerateLabels);
  const auto corpus = separable_corpus(3, 1);
  ModelConfig bad;
  bad.epochs = 0;
  CHECK_ERROR(train(corpus, bad), ErrorCode::kInvalidArgument);
  bad = {};
  bad.learning_rate = -1.0;
  CHECK_ERROR(train(corpus, bad), ErrorCode::kInvalidArgument);
}
