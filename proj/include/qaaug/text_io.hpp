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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qaaug {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string to_lower(std::string_view s);

std::int64_t parse_int(std::string_view s, std::string_view what, std::size_t line = 0);
double parse_double(std::string_view s, std::string_view what, std::size_t line = 0);

// ---------------------------------------------------------------------------
// CSV (RFC 4180 subset): comma separated, fields quoted with '"' when they
// contain a comma, quote, CR or LF; embedded quotes doubled. Rows end in LF.

struct CsvRow {
  std::size_t line = 0;  // physical line on which the row starts
  std::vector<std::string> fields;
};

std::vector<CsvRow> parse_csv(std::string_view text);
std::string csv_field(std::string_view value);
std::string csv_line(const std::vector<std::string>& fields);

// ---------------------------------------------------------------------------
// Flat `key = value` files. '#' starts a comment when it is the first
// non-blank character of a line. Keys use dotted section prefixes.

class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text);
  static KeyValueFile load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  std::optional<std::string> find(std::string_view key) const;

  std::string get_string(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  std::int64_t get_int(std::string_view key) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_u64(std::string_view key) const;
  double get_double(std::string_view key, double fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;
  std::vector<std::string> get_list(std::string_view key) const;

  // Keys starting with `prefix`, in lexicographic order.
  std::vector<std::string> keys_with_prefix(std::string_view prefix) const;

  void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

  // Canonical text form (sorted keys), stable across equivalent inputs.
  std::string canonical() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

// Shortest decimal representation that round-trips.
std::string format_real(double value);

}  // namespace qaaug
