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

#include "qaaug/metrics.hpp"

#include <array>
#include <cmath>
#include <set>

#include "qaaug/error.hpp"

namespace qaaug {

double macro_f1(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) throw Error(ErrorCode::kLengthMismatch, "y_true and y_pred differ in length");
  if (y_true.empty()) throw Error(ErrorCode::kEmptyInput, "no predictions");
  std::map<int, std::array<std::size_t, 3>> counts;  // tp, fp, fn
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == y_pred[i]) {
      ++counts[y_true[i]][0];
    } else {
      ++counts[y_pred[i]][1];
      ++counts[y_true[i]][2];
    }
  }
  double sum = 0.0;
  for (const auto& [label, c] : counts) {
    const auto denom = 2 * c[0] + c[1] + c[2];
    sum += denom == 0 ? 0.0 : 2.0 * static_cast<double>(c[0]) / static_cast<double>(denom);
  }
  return sum / static_cast<double>(counts.size());
}

PerQuestionMetrics per_question_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                                        std::span<const int> question_ids,
                                        std::span<const int> expected_questions) {
  if (y_true.size() != y_pred.size() || y_true.size() != question_ids.size()) {
    throw Error(ErrorCode::kLengthMismatch, "truth, prediction and question sequences differ in length");
  }
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> slices;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    auto& s = slices[question_ids[i]];
    s.first.push_back(y_true[i]);
    s.second.push_back(y_pred[i]);
  }
  PerQuestionMetrics out;
  for (int q : std::set<int>(expected_questions.begin(), expected_questions.end())) {
    if (slices.count(q) == 0) out.omitted.push_back(q);
  }
  if (slices.empty()) return out;
  double sum = 0.0;
  for (const auto& [q, s] : slices) {
    const double f = macro_f1(s.first, s.second);
    out.per_question_f1[q] = f;
    sum += f;
  }
  const auto n = static_cast<double>(slices.size());
  out.f1_per_q = sum / n;
  double var = 0.0;
  for (const auto& [q, f] : out.per_question_f1) var += (f - out.f1_per_q) * (f - out.f1_per_q);
  out.std_per_q = std::sqrt(var / n);
  return out;
}

std::string_view to_string(EvalTarget t) {
  return t == EvalTarget::kFoldTest ? "fold-test" : "cross-corpus";
}

EvalResult evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                    std::span<const int> question_ids, EvalTarget target,
                    std::span<const int> expected_questions) {
  EvalResult r;
  r.target = target;
  r.overall_f1 = macro_f1(y_true, y_pred);
  auto pq = per_question_metrics(y_true, y_pred, question_ids, expected_questions);
  r.per_question_f1 = std::move(pq.per_question_f1);
  r.f1_per_q = pq.f1_per_q;
  r.std_per_q = pq.std_per_q;
  r.omitted_questions = std::move(pq.omitted);
  return r;
}

}  // namespace qaaug
