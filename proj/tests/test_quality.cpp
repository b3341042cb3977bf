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
#include <map>
#include <set>

#include <fmt/format.h>

#include "qaaug/quality.hpp"
#include "qaaug/text_io.hpp"
#include "support.hpp"

using namespace qaaug;

namespace {

// Confusion-matrix form of Cohen's kappa over categories 0..k-1.
double cohen_oracle(const std::vector<int>& a, const std::vector<int>& b, int k) {
  std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) m[a[i]][b[i]] += 1.0;
  const double n = static_cast<double>(a.size());
  double po = 0.0, pe = 0.0;
  for (int i = 0; i < k; ++i) {
    po += m[i][i];
    double row = 0.0, col = 0.0;
    for (int j = 0; j < k; ++j) {
      row += m[i][j];
      col += m[j][i];
    }
    pe += row * col;
  }
  po /= n;
  pe /= n * n;
  return (po - pe) / (1.0 - pe);
}

std::vector<int> random_labels(Rng& rng, std::size_t n, int k) {
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(k))));
  return out;
}

// Two-rater annotations for one strategy with the given consensus counts.
void add_pairs(std::vector<AnnotationRecord>& out, Strategy s, int preserved, int invalid, int changed) {
  int next = 0;
  auto emit = [&](int a, int b) {
    const auto id = fmt::format("{}-{}", to_string(s), next++);
    out.push_back({id, s, 1, "r1", a});
    out.push_back({id, s, 1, "r2", b});
  };
  for (int i = 0; i < preserved; ++i) emit(1, 1);
  for (int i = 0; i < invalid; ++i) emit(kInvalidLabel, kInvalidLabel);
  for (int i = 0; i < changed; ++i) emit(1, i % 2 == 0 ? 2 : kInvalidLabel);
}

std::vector<std::pair<Strategy, Corpus>> single_strategy_sets(const Corpus& base, int quota) {
  const auto& res = test::fixture_resources();
  const auto index = index_subcorpora(base);
  SamplingConfig cfg;
  cfg.quota_per_bucket = quota;
  cfg.seed = 4;
  std::vector<std::pair<Strategy, Corpus>> out;
  for (auto s : kAllStrategies) {
    const TrainingSetSpec spec{std::string(to_string(s)), {{s}}, false};
    out.emplace_back(s, build_training_set(base, spec, sample_components(index, spec, cfg), res, 9));
  }
  return out;
}

}  // namespace

TEST_CASE("cohen_kappa examples") {
  const std::vector<int> a{0, 0, 1, 1}, b{0, 1, 1, 1};
  CHECK(observed_agreement(a, b) == doctest::Approx(0.75));
  CHECK(cohen_kappa(a, b) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cohen_kappa(std::vector<int>{0, 1}, std::vector<int>{1, 0}) == doctest::Approx(-1.0));
  CHECK(cohen_kappa(a, a) == 1.0);
  CHECK(cohen_kappa(std::vector<int>{2, 2, 2}, std::vector<int>{2, 2, 2}) == 1.0);
  CHECK_ERROR(cohen_kappa(std::vector<int>{0}, std::vector<int>{0, 1}), ErrorCode::kLengthMismatch);
  CHECK_ERROR(cohen_kappa(std::vector<int>{}, std::vector<int>{}), ErrorCode::kEmptyInput);
}

TEST_CASE("cohen_kappa matches the confusion-matrix oracle and its invariances") {
  const std::vector<int> relabel{2, 0, 3, 1};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto n = 2 + rng.below(60);
    auto a = random_labels(rng, n, 4);
    auto b = a;
    for (auto& v : b) {
      if (rng.bernoulli(0.4)) v = static_cast<int>(rng.below(4));
    }
    std::set<int> used(a.begin(), a.end());
    used.insert(b.begin(), b.end());
    if (used.size() < 2) continue;
    const double k = cohen_kappa(a, b);
    CHECK(k == doctest::Approx(cohen_oracle(a, b, 4)).epsilon(1e-12));
    CHECK(k <= 1.0 + 1e-12);
    CHECK(k >= -1.0 - 1e-12);
    CHECK(cohen_kappa(b, a) == doctest::Approx(k).epsilon(1e-12));
    std::vector<int> ra, rb;
    for (int v : a) ra.push_back(relabel[v]);
    for (int v : b) rb.push_back(relabel[v]);
    CHECK(cohen_kappa(ra, rb) == doctest::Approx(k).epsilon(1e-12));
    CHECK((k == 1.0) == (a == b));
  }
}

TEST_CASE("fleiss_kappa") {
  SUBCASE("unanimous") {
    CHECK(fleiss_kappa({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}) == doctest::Approx(1.0));
  }
  SUBCASE("three items, two raters") {
    // P_i = 1, 1, 0 so p-bar = 2/3; both categories hold half the ratings
    // so p-bar_e = 1/2 and kappa = (2/3 - 1/2) / (1/2) = 1/3.
    CHECK(std::abs(fleiss_kappa({{2, 0}, {0, 2}, {1, 1}}) - 1.0 / 3.0) < 1e-12);
  }
  SUBCASE("errors") {
    CHECK_ERROR(fleiss_kappa({{2, 0}, {1, 2}}), ErrorCode::kUnequalRaters);
    CHECK_ERROR(fleiss_kappa({{1, 0}, {0, 1}}), ErrorCode::kUnequalRaters);
    CHECK_ERROR(fleiss_kappa({}), ErrorCode::kEmptyInput);
    CHECK_ERROR(fleiss_kappa({{2, 0}, {2}}), ErrorCode::kLengthMismatch);
  }
}

TEST_CASE("fleiss_kappa with two raters equals cohen_kappa when marginals coincide") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 1000);
    const auto n = 4 + rng.below(40);
    auto a = random_labels(rng, n, 3);
    auto b = a;
    // A partial shuffle keeps the marginals identical.
    for (std::size_t i = 0; i < n / 2; ++i) std::swap(b[rng.below(n)], b[rng.below(n)]);
    std::set<int> used(a.begin(), a.end());
    if (used.size() < 2) continue;
    std::vector<std::vector<int>> counts(n, std::vector<int>(3, 0));
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[i][a[i]];
      ++counts[i][b[i]];
    }
    CHECK(fleiss_kappa(counts) == doctest::Approx(cohen_kappa(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("fleiss_kappa matches pairwise enumeration") {
  // p-bar is the share of agreeing ordered rater pairs per item; p-bar_e the
  // chance that two ratings drawn with replacement from the pooled marginal match.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 77);
    const auto items = 2 + rng.below(20);
    const auto raters = 2 + rng.below(5);
    std::vector<std::vector<int>> labels(items), counts(items, std::vector<int>(4, 0));
    std::vector<double> pooled(4, 0.0);
    for (std::size_t i = 0; i < items; ++i) {
      labels[i] = random_labels(rng, raters, 4);
      for (int v : labels[i]) {
        ++counts[i][v];
        pooled[v] += 1.0;
      }
    }
    double agree = 0.0;
    for (const auto& l : labels) {
      double same = 0.0;
      for (std::size_t x = 0; x < l.size(); ++x) {
        for (std::size_t y = 0; y < l.size(); ++y) same += (x != y && l[x] == l[y]) ? 1.0 : 0.0;
      }
      agree += same / static_cast<double>(raters * (raters - 1));
    }
    const double p_bar = agree / static_cast<double>(items);
    double pe = 0.0;
    for (double c : pooled) pe += (c / static_cast<double>(items * raters)) * (c / static_cast<double>(items * raters));
    if (pe >= 1.0) continue;
    CHECK(fleiss_kappa(counts) == doctest::Approx((p_bar - pe) / (1.0 - pe)).epsilon(1e-12));
  }
}

TEST_CASE("quality report examples") {
  SUBCASE("nine preserved, one invalid") {
    std::vector<AnnotationRecord> ann;
    add_pairs(ann, Strategy::kPhrase, 9, 1, 0);
    const auto report = compute_quality_report(ann);
    REQUIRE(report.rows.size() == 1);
    const auto& r = report.rows[0];
    CHECK(r.n == 10);
    CHECK(r.quality_pct == doctest::Approx(90.0));
    CHECK(r.invalid_pct == doctest::Approx(10.0));
    CHECK(r.changed_pct == doctest::Approx(0.0));
    CHECK(r.tier == QualityTier::kHigh);
    CHECK(report.raters == std::vector<std::string>{"r1", "r2"});
  }
  SUBCASE("every rating differs from the original") {
    std::vector<AnnotationRecord> ann;
    for (int i = 0; i < 6; ++i) {
      ann.push_back({fmt::format("p{}", i), Strategy::kGlove, 0, "a", 2});
      ann.push_back({fmt::format("p{}", i), Strategy::kGlove, 0, "b", 1});
    }
    const auto& r = compute_quality_report(ann).rows.at(0);
    CHECK(r.quality_pct == 0.0);
    CHECK(r.changed_pct == 100.0);
    CHECK(r.tier == QualityTier::kLow);
  }
  SUBCASE("a split invalid verdict counts as changed") {
    std::vector<AnnotationRecord> ann{{"p", Strategy::kOrder, 2, "a", kInvalidLabel},
                                      {"p", Strategy::kOrder, 2, "b", 2}};
    const auto& r = compute_quality_report(ann).rows.at(0);
    CHECK(r.changed == 1);
    CHECK(r.invalid == 0);
  }
  SUBCASE("missing rater") {
    std::vector<AnnotationRecord> ann{{"p1", Strategy::kOrder, 2, "a", 2},
                                      {"p1", Strategy::kOrder, 2, "b", 2},
                                      {"p2", Strategy::kOrder, 2, "a", 2}};
    CHECK_ERROR(compute_quality_report(ann), ErrorCode::kMissingRater);
  }
  SUBCASE("per-rater averaging") {
    std::vector<AnnotationRecord> ann{{"p1", Strategy::kDictionary, 1, "a", 1},
                                      {"p1", Strategy::kDictionary, 1, "b", 1},
                                      {"p2", Strategy::kDictionary, 0, "a", 0},
                                      {"p2", Strategy::kDictionary, 0, "b", kInvalidLabel}};
    const auto consensus = compute_quality_report(ann).rows.at(0);
    CHECK(consensus.quality_pct == doctest::Approx(50.0));
    CHECK(consensus.changed_pct == doctest::Approx(50.0));
    const auto averaged = compute_quality_report(ann, 90.0, QualityMode::kPerRaterAverage).rows.at(0);
    CHECK(averaged.quality_pct == doctest::Approx(75.0));
    CHECK(averaged.invalid_pct == doctest::Approx(25.0));
    CHECK(averaged.changed_pct == doctest::Approx(0.0));
  }
}

TEST_CASE("quality report reproduces the reference HQ/LQ partition") {
  struct Ref {
    Strategy s;
    double quality, invalid;
    QualityTier tier;
  };
  const std::vector<Ref> refs{{Strategy::kPhrase, 96, 1, QualityTier::kHigh},
                              {Strategy::kOrder, 94.5, 3.5, QualityTier::kHigh},
                              {Strategy::kDictionary, 94, 2, QualityTier::kHigh},
                              {Strategy::kWordnet, 83, 10, QualityTier::kLow},
                              {Strategy::kFasttext, 77, 10, QualityTier::kLow},
                              {Strategy::kPpdb, 73, 12, QualityTier::kLow},
                              {Strategy::kGlove, 68, 17, QualityTier::kLow}};
  std::vector<AnnotationRecord> ann;
  for (const auto& r : refs) {
    const int preserved = static_cast<int>(std::lround(r.quality * 2));
    const int invalid = static_cast<int>(std::lround(r.invalid * 2));
    add_pairs(ann, r.s, preserved, invalid, 200 - preserved - invalid);
  }
  const auto report = compute_quality_report(ann);
  REQUIRE(report.rows.size() == refs.size());
  for (const auto& ref : refs) {
    const auto it = std::find_if(report.rows.begin(), report.rows.end(),
                                 [&](const QualityRow& row) { return row.strategy == ref.s; });
    REQUIRE(it != report.rows.end());
    CAPTURE(to_string(ref.s));
    CHECK(it->n == 200);
    CHECK(it->quality_pct == doctest::Approx(ref.quality));
    CHECK(it->invalid_pct == doctest::Approx(ref.invalid));
    CHECK(it->quality_pct + it->invalid_pct + it->changed_pct == doctest::Approx(100.0));
    CHECK(it->tier == ref.tier);
  }
  const auto text = format_quality_report(report);
  CHECK(text.rfind("strategy,n,quality_pct,invalid_pct,changed_pct,tier\n", 0) == 0);
  CHECK(text.find("order,200,94.50,3.50,2.00,HQ\n") != std::string::npos);
}

TEST_CASE("ratings round trip and validation") {
  const std::vector<RatingRow> rows{{"p0001", "r1", 2}, {"p0001", "r2", kInvalidLabel}};
  const auto text = serialize_ratings(rows);
  CHECK(text == "pair_id,rater_id,assigned\np0001,r1,2\np0001,r2,X\n");
  const auto back = parse_ratings(text);
  REQUIRE(back.size() == 2);
  CHECK(back[1].assigned == kInvalidLabel);
  CHECK_ERROR(parse_ratings("pair,rater,label\n"), ErrorCode::kSchema);
  CHECK_ERROR(parse_ratings("pair_id,rater_id,assigned\np,r,5\n"), ErrorCode::kLabelOutOfRange);
}

TEST_CASE("quality export") {
  const auto base = load_corpus(test::fixture("cv_base.csv"));
  const auto sets = single_strategy_sets(base, 6);

  const auto ex = export_quality_sample(base, sets, 5, 31);
  CHECK(ex.rows == 1155);
  for (const auto& [name, n] : ex.per_strategy) CHECK(n == 165);
  CHECK(ex.per_strategy.size() == 7);
  for (const auto& [key, n] : ex.per_strategy_bucket) CHECK(n == 5);

  const auto annot = parse_csv(ex.annotator_csv);
  const auto key = parse_csv(ex.key_csv);
  REQUIRE(annot.size() == 1156);
  REQUIRE(key.size() == 1156);
  CHECK(join(annot[0].fields, ",") == kAnnotatorHeader);
  CHECK(join(key[0].fields, ",") == kKeyHeader);

  // The key maps every anonymous id to a strategy; the annotator view never
  // names one, and rows of different strategies are interleaved.
  std::set<std::string> strategy_names;
  for (auto s : kAllStrategies) strategy_names.insert(std::string(to_string(s)));
  std::size_t switches = 0;
  for (std::size_t i = 1; i < key.size(); ++i) {
    CHECK(key[i].fields[0] == annot[i].fields[0]);
    CHECK(strategy_names.count(key[i].fields[1]) == 1);
    if (i > 1 && key[i].fields[1] != key[i - 1].fields[1]) ++switches;
    for (const auto& f : annot[i].fields) CHECK(strategy_names.count(f) == 0);
  }
  CHECK(switches > 500);

  SUBCASE("deterministic per seed, and the counts do not depend on the shuffle") {
    const auto again = export_quality_sample(base, sets, 5, 31);
    CHECK(again.annotator_csv == ex.annotator_csv);
    CHECK(again.key_csv == ex.key_csv);
    const auto other = export_quality_sample(base, sets, 5, 32);
    CHECK(other.key_csv != ex.key_csv);
    CHECK(other.per_strategy_bucket == ex.per_strategy_bucket);
  }
  SUBCASE("one strategy") {
    const auto one = export_quality_sample(base, {sets[0]}, 5, 1);
    CHECK(one.rows == 165);
  }
  SUBCASE("empty strategy list gives a header-only file") {
    const auto none = export_quality_sample(base, {}, 5, 1);
    CHECK(none.rows == 0);
    CHECK(none.annotator_csv == std::string(kAnnotatorHeader) + "\n");
    CHECK(none.key_csv == std::string(kKeyHeader) + "\n");
  }
  SUBCASE("insufficient coverage") {
    CHECK_ERROR(export_quality_sample(base, sets, 7, 1), ErrorCode::kInsufficientCoverage);
  }
  SUBCASE("joined ratings feed the report") {
    std::vector<RatingRow> ratings;
    for (std::size_t i = 1; i < annot.size(); ++i) {
      const int label = std::stoi(annot[i].fields[4]);
      ratings.push_back({annot[i].fields[0], "r1", label});
      ratings.push_back({annot[i].fields[0], "r2", label});
    }
    const auto joined = join_annotations(ex.annotator_csv, ex.key_csv, ratings);
    CHECK(joined.size() == 2310);
    const auto report = compute_quality_report(joined);
    CHECK(report.rows.size() == 7);
    for (const auto& r : report.rows) CHECK(r.quality_pct == 100.0);
  }
}
