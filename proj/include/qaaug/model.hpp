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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qaaug/corpus.hpp"

namespace qaaug {

// (column, value) pairs sorted by column, no duplicate columns.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  bool operator==(const SparseVector&) const = default;
};

// Answer unigrams ("w=tok"), answer bigrams ("b=tok tok") and
// question-by-unigram crosses ("qw=3:tok") are learned from training data.
// The question indicator lives in a fixed block after the vocabulary, so it
// is present even for an empty vocabulary.
class FeatureSpace {
 public:
  FeatureSpace() = default;

  static FeatureSpace build(const Corpus& corpus, bool use_question = true);
  static FeatureSpace from_features(const std::vector<std::string>& features, bool use_question = true);

  SparseVector featurize(const QAPair& pair) const;

  std::size_t vocabulary_size() const { return names_.size(); }
  std::size_t dimension() const;
  bool use_question() const { return use_question_; }
  bool contains(std::string_view feature) const { return index_.count(std::string(feature)) != 0; }
  std::string feature_name(std::size_t column) const;
  const std::vector<std::string>& features() const { return names_; }

  // Feature strings an answer produces, known or not.
  static std::vector<std::string> answer_features(const QAPair& pair, bool use_question);

 private:
  void intern(const std::string& feature);

  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> names_;
  bool use_question_ = true;
};

struct ModelConfig {
  int epochs = 30;
  double learning_rate = 0.1;  // decays as lr / sqrt(epoch)
  double l2 = 1e-5;
  std::uint64_t seed = 0;
  bool use_question = true;  // false: answer-only input
};

using Probabilities = std::array<double, kNumLabels>;

class LinearModel {
 public:
  LinearModel() = default;
  explicit LinearModel(std::size_t dimension) : dimension_(dimension), weights_(kNumLabels * dimension, 0.0) {}

  std::size_t dimension() const { return dimension_; }
  double weight(int label, std::size_t column) const { return weights_[static_cast<std::size_t>(label) * dimension_ + column]; }
  double& weight(int label, std::size_t column) { return weights_[static_cast<std::size_t>(label) * dimension_ + column]; }
  double bias(int label) const { return bias_[static_cast<std::size_t>(label)]; }
  double& bias(int label) { return bias_[static_cast<std::size_t>(label)]; }
  std::span<const double> weights() const { return weights_; }

  std::array<double, kNumLabels> scores(const SparseVector& x) const;
  Probabilities predict_proba(const SparseVector& x) const;
  int predict(const SparseVector& x) const;

  // Mean cross-entropy plus (l2/2)·||W||² (bias unregularised).
  double objective(std::span<const SparseVector> xs, std::span<const int> labels, double l2) const;
  // Full-batch gradient of objective(); returns (dW flattened, dBias).
  std::pair<std::vector<double>, std::array<double, kNumLabels>> gradient(
      std::span<const SparseVector> xs, std::span<const int> labels, double l2) const;

  bool operator==(const LinearModel&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> weights_;
  std::array<double, kNumLabels> bias_{};
};

// Numerically stable softmax.
Probabilities softmax(const std::array<double, kNumLabels>& scores);

// Index of the largest score, lowest index on ties.
int argmax(const std::array<double, kNumLabels>& scores);

struct TrainStats {
  std::vector<double> epoch_loss;  // mean cross-entropy seen during each epoch
};

struct TrainedModel {
  FeatureSpace space;
  LinearModel model;
  TrainStats stats;

  Probabilities predict_proba(const QAPair& pair) const { return model.predict_proba(space.featurize(pair)); }
  int predict(const QAPair& pair) const { return model.predict(space.featurize(pair)); }
};

// SGD on softmax cross-entropy with L2 weight decay; one shuffle per
// (seed, epoch). Throws DegenerateLabels for fewer than two labels.
TrainedModel train(const Corpus& corpus, const ModelConfig& config);

// Lower-level entry point over pre-featurised rows.
LinearModel train_rows(std::span<const SparseVector> xs, std::span<const int> labels,
                       std::size_t dimension, const ModelConfig& config, TrainStats* stats = nullptr);

std::string serialize_model(const FeatureSpace& space, const LinearModel& model);
TrainedModel parse_model(std::string_view text);
void save_model(const TrainedModel& m, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace qaaug
