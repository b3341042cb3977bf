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

#include "qaaug/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "qaaug/error.hpp"
#include "qaaug/rng.hpp"
#include "qaaug/text_io.hpp"
#include "qaaug/tokenize.hpp"

namespace qaaug {

namespace {

constexpr std::string_view kModelMagic = "qaaug-linear-model";
constexpr int kModelVersion = 1;
constexpr std::size_t kQuestionSlots = kMaxQuestion;

}  // namespace

std::vector<std::string> FeatureSpace::answer_features(const QAPair& pair, bool use_question) {
  const auto tokens = tokenize(pair.answer).tokens;
  std::vector<std::string> out;
  out.reserve(tokens.size() * 3);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out.push_back("w=" + tokens[i]);
    if (i + 1 < tokens.size()) out.push_back("b=" + tokens[i] + " " + tokens[i + 1]);
    if (use_question) out.push_back(fmt::format("qw={}:{}", pair.question_id, tokens[i]));
  }
  return out;
}

void FeatureSpace::intern(const std::string& feature) {
  if (index_.count(feature) != 0) return;
  index_.emplace(feature, static_cast<std::uint32_t>(names_.size()));
  names_.push_back(feature);
}

FeatureSpace FeatureSpace::build(const Corpus& corpus, bool use_question) {
  FeatureSpace space;
  space.use_question_ = use_question;
  for (const auto& p : corpus.records()) {
    for (const auto& f : answer_features(p, use_question)) space.intern(f);
  }
  return space;
}

FeatureSpace FeatureSpace::from_features(const std::vector<std::string>& features, bool use_question) {
  FeatureSpace space;
  space.use_question_ = use_question;
  for (const auto& f : features) space.intern(f);
  return space;
}

std::size_t FeatureSpace::dimension() const {
  return names_.size() + (use_question_ ? kQuestionSlots : 0);
}

std::string FeatureSpace::feature_name(std::size_t column) const {
  if (column < names_.size()) return names_[column];
  return fmt::format("q={}", column - names_.size() + 1);
}

SparseVector FeatureSpace::featurize(const QAPair& pair) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& f : answer_features(pair, use_question_)) {
    const auto it = index_.find(f);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  if (use_question_) {
    const auto slot = static_cast<std::uint32_t>(names_.size()) +
                      static_cast<std::uint32_t>(pair.question_id - kMinQuestion);
    counts[slot] = 1.0;
  }
  SparseVector x;
  x.entries.assign(counts.begin(), counts.end());
  return x;
}

Probabilities softmax(const std::array<double, kNumLabels>& scores) {
  const double m = *std::max_element(scores.begin(), scores.end());
  Probabilities p{};
  double z = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    p[c] = std::exp(scores[c] - m);
    z += p[c];
  }
  for (auto& v : p) v /= z;
  return p;
}

int argmax(const std::array<double, kNumLabels>& scores) {
  int best = 0;
  for (int c = 1; c < kNumLabels; ++c) {
    if (scores[static_cast<std::size_t>(c)] > scores[static_cast<std::size_t>(best)]) best = c;
  }
  return best;
}

std::array<double, kNumLabels> LinearModel::scores(const SparseVector& x) const {
  std::array<double, kNumLabels> s{};
  for (int c = 0; c < kNumLabels; ++c) {
    double v = bias(c);
    for (const auto& [j, xv] : x.entries) {
      if (j < dimension_) v += weight(c, j) * xv;
    }
    s[static_cast<std::size_t>(c)] = v;
  }
  return s;
}

Probabilities LinearModel::predict_proba(const SparseVector& x) const { return softmax(scores(x)); }

int LinearModel::predict(const SparseVector& x) const { return argmax(scores(x)); }

double LinearModel::objective(std::span<const SparseVector> xs, std::span<const int> labels,
                              double l2) const {
  double loss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto s = scores(xs[i]);
    const double m = *std::max_element(s.begin(), s.end());
    double z = 0.0;
    for (double v : s) z += std::exp(v - m);
    loss += m + std::log(z) - s[static_cast<std::size_t>(labels[i])];
  }
  loss /= static_cast<double>(xs.size());
  double sq = 0.0;
  for (double w : weights_) sq += w * w;
  return loss + 0.5 * l2 * sq;
}

std::pair<std::vector<double>, std::array<double, kNumLabels>> LinearModel::gradient(
    std::span<const SparseVector> xs, std::span<const int> labels, double l2) const {
  std::vector<double> gw(weights_.size(), 0.0);
  std::array<double, kNumLabels> gb{};
  const double inv_n = 1.0 / static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto p = predict_proba(xs[i]);
    for (int c = 0; c < kNumLabels; ++c) {
      const double g = (p[static_cast<std::size_t>(c)] - (labels[i] == c ? 1.0 : 0.0)) * inv_n;
      gb[static_cast<std::size_t>(c)] += g;
      for (const auto& [j, xv] : xs[i].entries) {
        gw[static_cast<std::size_t>(c) * dimension_ + j] += g * xv;
      }
    }
  }
  for (std::size_t k = 0; k < gw.size(); ++k) gw[k] += l2 * weights_[k];
  return {std::move(gw), gb};
}

LinearModel train_rows(std::span<const SparseVector> xs, std::span<const int> labels,
                       std::size_t dimension, const ModelConfig& config, TrainStats* stats) {
  if (xs.size() != labels.size()) throw Error(ErrorCode::kLengthMismatch, "rows and labels differ");
  const std::set<int> present(labels.begin(), labels.end());
  if (present.size() < 2) throw Error(ErrorCode::kDegenerateLabels, "training data has fewer than two labels");
  if (config.epochs <= 0 || !(config.learning_rate > 0.0) || config.l2 < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "epochs and learning rate must be positive, l2 non-negative");
  }
  LinearModel model(dimension);
  // W = scale * V lets the L2 shrinkage touch only one scalar per step.
  std::vector<double> v(kNumLabels * dimension, 0.0);
  double scale = 1.0;
  std::vector<std::size_t> order(xs.size());
  TrainStats local;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    auto rng = substream(config.seed, "epoch", std::to_string(epoch));
    rng.shuffle(std::span<std::size_t>(order));
    const double eta = config.learning_rate / std::sqrt(static_cast<double>(epoch));
    const double decay = 1.0 - eta * config.l2;
    if (!(decay > 0.0)) throw Error(ErrorCode::kInvalidArgument, "learning rate times l2 must be below 1");
    double epoch_loss = 0.0;
    for (auto i : order) {
      const auto& x = xs[i];
      std::array<double, kNumLabels> s{};
      for (int c = 0; c < kNumLabels; ++c) {
        double acc = 0.0;
        for (const auto& [j, xv] : x.entries) acc += v[static_cast<std::size_t>(c) * dimension + j] * xv;
        s[static_cast<std::size_t>(c)] = scale * acc + model.bias(c);
      }
      const auto p = softmax(s);
      const auto y = static_cast<std::size_t>(labels[i]);
      epoch_loss += -std::log(std::max(p[y], 1e-300));
      if (config.l2 > 0.0) scale *= decay;
      for (int c = 0; c < kNumLabels; ++c) {
        const double g = p[static_cast<std::size_t>(c)] - (static_cast<std::size_t>(c) == y ? 1.0 : 0.0);
        const double step = eta * g / scale;
        for (const auto& [j, xv] : x.entries) v[static_cast<std::size_t>(c) * dimension + j] -= step * xv;
        model.bias(c) -= eta * g;
      }
      if (scale < 1e-9) {
        for (auto& w : v) w *= scale;
        scale = 1.0;
      }
    }
    local.epoch_loss.push_back(epoch_loss / static_cast<double>(xs.size()));
  }
  for (int c = 0; c < kNumLabels; ++c) {
    for (std::size_t j = 0; j < dimension; ++j) {
      model.weight(c, j) = scale * v[static_cast<std::size_t>(c) * dimension + j];
    }
  }
  if (stats != nullptr) *stats = std::move(local);
  return model;
}

TrainedModel train(const Corpus& corpus, const ModelConfig& config) {
  TrainedModel out;
  out.space = FeatureSpace::build(corpus, config.use_question);
  std::vector<SparseVector> xs;
  std::vector<int> labels;
  xs.reserve(corpus.size());
  for (const auto& p : corpus.records()) {
    xs.push_back(out.space.featurize(p));
    labels.push_back(p.label);
  }
  out.model = train_rows(xs, labels, out.space.dimension(), config, &out.stats);
  return out;
}

std::string serialize_model(const FeatureSpace& space, const LinearModel& model) {
  std::string out = fmt::format("{} {}\n", kModelMagic, kModelVersion);
  out += fmt::format("question_features {}\n", space.use_question() ? 1 : 0);
  out += fmt::format("vocabulary {}\n", space.vocabulary_size());
  for (const auto& f : space.features()) out += f + "\n";
  out += fmt::format("bias {:a} {:a} {:a}\n", model.bias(0), model.bias(1), model.bias(2));
  out += "weights\n";
  for (std::size_t j = 0; j < model.dimension(); ++j) {
    for (int c = 0; c < kNumLabels; ++c) {
      const double w = model.weight(c, j);
      if (w != 0.0) out += fmt::format("{}\t{}\t{:a}\n", space.feature_name(j), c, w);
    }
  }
  return out;
}

TrainedModel parse_model(std::string_view text) {
  const auto lines = split(text, '\n');
  std::size_t at = 0;
  auto next = [&]() -> std::string_view {
    if (at >= lines.size()) throw Error(ErrorCode::kParse, "truncated model file", at + 1);
    return lines[at++];
  };
  if (next() != fmt::format("{} {}", kModelMagic, kModelVersion)) {
    throw Error(ErrorCode::kSchema, "not a version 1 model file", 1);
  }
  auto field = [&](std::string_view name) {
    const auto line = next();
    if (line.substr(0, name.size() + 1) != fmt::format("{} ", name)) {
      throw Error(ErrorCode::kParse, fmt::format("expected '{}'", name), at);
    }
    return line.substr(name.size() + 1);
  };
  const bool use_question = parse_int(field("question_features"), "question_features", at) != 0;
  const auto vocab = static_cast<std::size_t>(parse_int(field("vocabulary"), "vocabulary", at));
  std::vector<std::string> features;
  for (std::size_t i = 0; i < vocab; ++i) features.emplace_back(next());
  TrainedModel m;
  m.space = FeatureSpace::from_features(features, use_question);
  m.model = LinearModel(m.space.dimension());
  const auto bias = split(field("bias"), ' ');
  if (bias.size() != kNumLabels) throw Error(ErrorCode::kParse, "expected 3 bias values", at);
  for (int c = 0; c < kNumLabels; ++c) m.model.bias(c) = std::strtod(bias[static_cast<std::size_t>(c)].c_str(), nullptr);
  if (next() != "weights") throw Error(ErrorCode::kParse, "expected 'weights'", at);
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t j = 0; j < m.space.dimension(); ++j) column[m.space.feature_name(j)] = j;
  while (at < lines.size()) {
    const auto line = lines[at++];
    if (line.empty()) continue;
    const auto parts = split(line, '\t');
    if (parts.size() != 3) throw Error(ErrorCode::kParse, "expected feature<TAB>class<TAB>weight", at);
    const auto it = column.find(parts[0]);
    if (it == column.end()) throw Error(ErrorCode::kParse, fmt::format("unknown feature '{}'", parts[0]), at);
    const auto c = static_cast<int>(parse_int(parts[1], "class", at));
    if (c < 0 || c >= kNumLabels) throw Error(ErrorCode::kLabelOutOfRange, "class out of range", at);
    m.model.weight(c, it->second) = std::strtod(parts[2].c_str(), nullptr);
  }
  return m;
}

void save_model(const TrainedModel& m, const std::filesystem::path& path) {
  write_file(path, serialize_model(m.space, m.model));
}

TrainedModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

}  // namespace qaaug
