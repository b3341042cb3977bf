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

#include "qaaug/tokenize.hpp"

#include <cctype>

#include "qaaug/text_io.hpp"

namespace qaaug {

namespace {

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!is_punct(c)) return false;
  }
  return true;
}

TokenSequence tokenize(std::string_view text) {
  TokenSequence seq;
  seq.original_text = std::string(text);
  const auto lower = to_lower(text);
  std::size_t i = 0;
  while (i < lower.size()) {
    while (i < lower.size() && is_space(lower[i])) ++i;
    if (i >= lower.size()) break;
    std::size_t end = i;
    while (end < lower.size() && !is_space(lower[end])) ++end;
    std::string_view chunk(lower.data() + i, end - i);
    i = end;

    bool glue = false;  // first piece of a chunk follows whitespace
    auto push = [&](std::string_view piece) {
      seq.tokens.emplace_back(piece);
      seq.glued.push_back(glue);
      glue = true;
    };
    std::size_t lead = 0;
    while (lead < chunk.size() && is_punct(chunk[lead])) ++lead;
    if (lead == chunk.size()) {
      for (char c : chunk) push(std::string_view(&c, 1));
      continue;
    }
    std::size_t trail = chunk.size();
    while (trail > lead && is_punct(chunk[trail - 1])) --trail;
    for (std::size_t p = 0; p < lead; ++p) push(chunk.substr(p, 1));
    push(chunk.substr(lead, trail - lead));
    for (std::size_t p = trail; p < chunk.size(); ++p) push(chunk.substr(p, 1));
  }
  return seq;
}

std::string detokenize(const TokenSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    const bool glue = i < seq.glued.size() && seq.glued[i];
    if (i > 0 && !glue) out += ' ';
    out += seq.tokens[i];
  }
  return out;
}

std::string detokenize(const std::vector<std::string>& tokens) { return join(tokens, " "); }

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : to_lower(text)) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

}  // namespace qaaug
