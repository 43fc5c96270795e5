// Copyright 2026 The circring Authors
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
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace circring {

inline constexpr const char* kVersion = "0.1.0";

/// One CSV cell: a number, an optional number (empty when missing), an
/// integer or text.
using Cell = std::variant<double, std::optional<double>, long long, std::string>;

/// Comma-separated table with a fixed header. Numbers use 12 significant
/// digits so identical inputs give byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> columns);
  void row(const std::vector<Cell>& cells);
  std::size_t rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::ofstream out_;
  std::string path_;
  std::vector<std::string> columns_;
  std::size_t rows_ = 0;
};

std::string format_cell(const Cell& cell);

struct Metadata {
  std::string subcommand;
  std::string config_hash;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Writes `<csv_path>.meta` with '#'-prefixed key: value lines. The
/// timestamp line is the only non-deterministic content.
void write_metadata(const std::string& csv_path, const Metadata& meta);

}  // namespace circring
