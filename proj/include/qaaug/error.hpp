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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qaaug {

enum class ErrorCode {
  kIo,
  kParse,
  kSchema,
  kLabelOutOfRange,
  kDuplicateId,
  kInvalidRecord,
  kInsufficientBucket,
  kMissingTemplate,
  kSynonymEqualsHead,
  kDimensionMismatch,
  kNonNumeric,
  kEmptySection,
  kOutOfVocabulary,
  kUnboundResource,
  kLengthMismatch,
  kEmptyInput,
  kDegenerateLabels,
  kBrokenProvenance,
  kInvalidArgument,
  kConfig,
  kMissingRater,
  kInsufficientCoverage,
  kUnequalRaters,
  kOutOfTable,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this type. `line()` is the
// 1-based input line for parse errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace qaaug
