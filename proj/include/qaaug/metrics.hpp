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

#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace qaaug {

// Unweighted mean of per-label F1 over the labels that occur in either
// sequence. A label with no true or predicted positives contributes 0.
double macro_f1(std::span<const int> y_true, std::span<const int> y_pred);

struct PerQuestionMetrics {
  std::map<int, double> per_question_f1;
  double f1_per_q = 0.0;
  double std_per_q = 0.0;       // population standard deviation
  std::vector<int> omitted;     // expected questions with no test rows
};

// `expected_questions` lists the questions that should appear; any that
// are missing are reported in `omitted`. Empty means "whatever occurs".
PerQuestionMetrics per_question_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                                        std::span<const int> question_ids,
                                        std::span<const int> expected_questions = {});

enum class EvalTarget { kFoldTest, kCrossCorpus };
std::string_view to_string(EvalTarget t);

struct EvalResult {
  EvalTarget target = EvalTarget::kFoldTest;
  double overall_f1 = 0.0;
  std::map<int, double> per_question_f1;
  double f1_per_q = 0.0;
  double std_per_q = 0.0;
  std::vector<int> omitted_questions;
};

EvalResult evaluate(std::span<const int> y_true, std::span<const int> y_pred,
                    std::span<const int> question_ids, EvalTarget target,
                    std::span<const int> expected_questions = {});

}  // namespace qaaug
