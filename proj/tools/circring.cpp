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

#include <CLI11.hpp>

#include <iostream>

#include "circring/commands.hpp"
#include "circring/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Three-island ring circulator: spectra, scattering, calibration and quasiparticle sectors"};
  app.require_subcommand(1);
  std::string config_path;
  circring::RunOptions options;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  for (const std::string& name : circring::subcommand_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "YAML run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", options.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "random seed, overrides the config");
    sub->add_option("--threads", threads, "worker threads, 0 for all cores");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  options.seed = seed;
  options.threads = threads;
  try {
    const circring::RunConfig config = circring::parse_config(config_path);
    const circring::RunResult result = circring::run_subcommand(name, config, options);
    for (const std::string& f : result.files) std::cout << f << "\n";
    return 0;
  } catch (const circring::Error& e) {
    std::cerr << "circring " << name << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "circring " << name << ": " << e.what() << "\n";
    return 1;
  }
}
