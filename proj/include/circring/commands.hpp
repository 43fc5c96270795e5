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

#include <optional>
#include <string>
#include <vector>

#include "circring/config.hpp"

namespace circring {

/// Command-line overrides. Unset fields fall back to the config.
struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

struct RunResult {
  std::vector<std::string> files;  // CSV paths written, metadata sidecars excluded
};

const std::vector<std::string>& subcommand_names();

/// Header of every CSV a subcommand writes, keyed by file stem. Stems with
/// a "{seed}" placeholder are written once per run.
std::vector<std::pair<std::string, std::vector<std::string>>> csv_schemas(const std::string& subcommand);

/// --threads, then CIRCRING_THREADS, then the config field; 0 means all
/// hardware threads.
int resolve_threads(const RunConfig& config, std::optional<int> cli);

/// Runs one subcommand and writes its CSV files plus `.meta` sidecars into
/// options.out_dir. Library errors propagate; Error::exit_code() gives the
/// process status.
RunResult run_subcommand(const std::string& name, const RunConfig& config, const RunOptions& options);

}  // namespace circring
