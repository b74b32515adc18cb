// Copyright 2026 The symstab Authors
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
#include <optional>
#include <string>

#include "symstab/cli.hpp"

int main(int argc, char** argv) {
  using namespace symstab;
  CLI::App app{"Symmetric-subspace stabilisation simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(experiment::kLibraryVersion));

  std::size_t copies = 4;
  std::string out_path;
  auto* emit = app.add_subcommand("emit-network", "Write the R-copy network as JSON and a listing");
  emit->add_option("-R,--copies", copies, "Number of copies (2..6)")->required();
  emit->add_option("--out", out_path, "Circuit JSON path (listing goes beside it as .txt)");

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> run_out, format;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config_path, "Experiment config")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", run_out, "Override the output path");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string level = "fast";
  bool inject_fault = false;
  auto* ver = app.add_subcommand("verify", "Run the invariant suites");
  ver->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  ver->add_flag("--inject-projector-fault", inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitInvalidInput;
  }

  if (*emit) return cli::cmd_emit_network(copies, out_path, std::cout, std::cerr);
  if (*run) return cli::cmd_run(config_path, {seed, run_out, format}, std::cout, std::cerr);
  return cli::cmd_verify(level == "full" ? verify::Level::full : verify::Level::fast,
                         inject_fault, std::cout);
}
