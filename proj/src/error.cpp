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

#include "qaaug/error.hpp"

#include <fmt/format.h>

namespace qaaug {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kSchema: return "Schema";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kInsufficientBucket: return "InsufficientBucket";
    case ErrorCode::kMissingTemplate: return "MissingTemplate";
    case ErrorCode::kSynonymEqualsHead: return "SynonymEqualsHead";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonNumeric: return "NonNumeric";
    case ErrorCode::kEmptySection: return "EmptySection";
    case ErrorCode::kOutOfVocabulary: return "OutOfVocabulary";
    case ErrorCode::kUnboundResource: return "UnboundResource";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kBrokenProvenance: return "BrokenProvenance";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kMissingRater: return "MissingRater";
    case ErrorCode::kInsufficientCoverage: return "InsufficientCoverage";
    case ErrorCode::kUnequalRaters: return "UnequalRaters";
    case ErrorCode::kOutOfTable: return "OutOfTable";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, std::size_t line) {
  if (line > 0) {
    return fmt::format("{} at line {}: {}", error_code_name(code), line, message);
  }
  return fmt::format("{}: {}", error_code_name(code), message);
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line) {}

}  // namespace qaaug
