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

#include <string>
#include <string_view>
#include <vector>

namespace qaaug {

// Lowercased tokens plus, per token, whether it was written directly after
// the previous token with no whitespace (detached punctuation). The flags
// let detokenize reproduce the whitespace-normalised input exactly.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<bool> glued;
  std::string original_text;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

bool is_punctuation_token(std::string_view token);

// Splits on whitespace, lowercases, and detaches leading and trailing ASCII
// punctuation as one token per character. Apostrophes and other punctuation
// inside a word stay in the word ("that's", "does'nt").
TokenSequence tokenize(std::string_view text);

std::string detokenize(const TokenSequence& seq);

// Space-joined; use when the tokens carry no attachment information.
std::string detokenize(const std::vector<std::string>& tokens);

// Lowercase with runs of whitespace collapsed to one space and trimmed.
std::string normalize_whitespace(std::string_view text);

}  // namespace qaaug
