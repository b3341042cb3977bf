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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaaug/augment.hpp"
#include "qaaug/error.hpp"
#include "qaaug/experiment.hpp"
#include "qaaug/quality.hpp"
#include "qaaug/text_io.hpp"

namespace qaaug {

// Pipeline configuration. Paths inside the file are relative to the file.
struct RunConfig {
  KeyValueFile kv;
  std::filesystem::path base_dir;
  std::uint64_t seed = 0;
  std::filesystem::path base_corpus;
  std::filesystem::path cross_corpus;
  std::map<std::string, std::filesystem::path> resources;  // dictionary, phrases, ...
  std::size_t neighbors = 10;
  SamplingConfig sampling;
  std::vector<TrainingSetSpec> sets;
  ModelConfig model;
  std::size_t folds = 10;
  std::vector<InputSetup> setups;
  double alpha = 0.05;
  std::string rank_metric = "f1_per_q";
  EvalTarget rank_target = EvalTarget::kFoldTest;
  bool iman_davenport = false;
  int quality_per_bucket = 5;
  double quality_threshold = 90.0;
  QualityMode quality_mode = QualityMode::kConsensus;
  std::filesystem::path output_dir;
  std::size_t workers = 1;

  // First 16 hex digits of the canonical config hash.
  std::string hash() const;
  std::filesystem::path run_dir() const { return output_dir / hash(); }
};

// Throws Config naming the offending key. `seed` overrides the file.
RunConfig parse_run_config(const KeyValueFile& kv, const std::filesystem::path& base_dir,
                           std::optional<std::uint64_t> seed = std::nullopt);
RunConfig load_run_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed = std::nullopt);

AugmentResources load_resources(const RunConfig& config);

// Exit status: 0 success, 1 validation error, 2 runtime error.
int exit_code_for(ErrorCode code);

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qaaug
