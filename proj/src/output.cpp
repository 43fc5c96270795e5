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

#include "circring/output.hpp"

#include <Eigen/Core>
#include <chrono>
#include <ctime>

#include <fmt/format.h>

#include "circring/errors.hpp"

namespace circring {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& cell) {
  struct {
    std::string operator()(double v) const { return fmt::format("{:.12g}", v); }
    std::string operator()(const std::optional<double>& v) const { return v ? fmt::format("{:.12g}", *v) : ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return quote(v); }
  } visit;
  return std::visit(visit, cell);
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> columns)
    : out_(path), path_(path), columns_(std::move(columns)) {
  if (!out_) throw Error("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) {
    throw Error(fmt::format("{}: row has {} cells for {} columns", path_, cells.size(), columns_.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << format_cell(cells[i]);
  out_ << "\n";
  if (!out_) throw Error("write to '" + path_ + "' failed");
  ++rows_;
}

void write_metadata(const std::string& csv_path, const Metadata& meta) {
  std::ofstream out(csv_path + ".meta");
  if (!out) throw Error("cannot open '" + csv_path + ".meta' for writing");
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "# circring_version: " << kVersion << "\n";
  out << "# eigen_version: " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "." << EIGEN_MINOR_VERSION
      << "\n";
  out << "# subcommand: " << meta.subcommand << "\n";
  out << "# config_hash: " << meta.config_hash << "\n";
  out << "# seed: " << (meta.seed ? std::to_string(*meta.seed) : "none") << "\n";
  out << "# threads: " << meta.threads << "\n";
  for (const auto& [k, v] : meta.extra) out << "# " << k << ": " << v << "\n";
  out << "# timestamp: " << stamp << "\n";
}

}  // namespace circring
