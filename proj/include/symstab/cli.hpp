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

#pragma once

// Subcommand implementations for the symstab executable. Each returns the
// process exit code: 0 success, 1 invalid input or I/O failure,
// 2 verification failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "symstab/circuit.hpp"
#include "symstab/experiment.hpp"
#include "symstab/serialization.hpp"
#include "symstab/verify.hpp"

namespace symstab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Relative paths are placed under $SYMSTAB_OUTPUT_DIR when it is set.
inline std::filesystem::path resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  if (const char* dir = std::getenv("SYMSTAB_OUTPUT_DIR"); dir && *dir && p.is_relative()) {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

inline bool write_file(const std::filesystem::path& path, const std::string& text,
                       std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (f) f << text;
  if (!f) {
    err << "error: cannot write '" << path.string() << "'\n";
    return false;
  }
  return true;
}

inline int cmd_emit_network(std::size_t copies, const std::string& out_path, std::ostream& out,
                            std::ostream& err) {
  if (copies < 2 || copies > circuit::kMaxNetworkCopies) {
    err << "error: R must be between 2 and " << circuit::kMaxNetworkCopies << " (got " << copies
        << ")\n";
    return kExitInvalidInput;
  }
  const auto net = circuit::build_symmetrisation_network(copies);
  const auto report = circuit::gate_count_report(net);
  const auto json_path =
      resolve_output_path(out_path.empty() ? "network_R" + std::to_string(copies) + ".json"
                                           : out_path);
  auto listing_path = json_path;
  listing_path.replace_extension(".txt");
  if (!write_file(json_path, io::to_json(net).dump(2) + "\n", err)) return kExitInvalidInput;
  if (!write_file(listing_path, circuit::gate_listing(net), err)) return kExitInvalidInput;
  out << "wires: " << report.total_wires << " (data " << report.data_wires << ", auxiliary "
      << report.ancilla_wires << ")\n"
      << "gates: " << report.total_gates << " (fredkin " << report.count(circuit::GateKind::fredkin)
      << ", preparation " << report.preparation_gates() << "), depth " << report.depth << "\n"
      << "wrote " << json_path.string() << " and " << listing_path.string() << "\n";
  return kExitOk;
}

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

inline int cmd_run(const std::string& config_path, const RunOverrides& overrides,
                   std::ostream& out, std::ostream& err) {
  std::ifstream f(config_path, std::ios::binary);
  if (!f) {
    err << "error: cannot read config '" << config_path << "'\n";
    return kExitInvalidInput;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  experiment::ExperimentConfig config;
  try {
    config = experiment::parse_config(buf.str());
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.out) config.output_path = *overrides.out;
    if (overrides.format) config.format = experiment::format_from_name(*overrides.format);
  } catch (const experiment::ConfigError& e) {
    err << "error: invalid config: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  experiment::RunRecord record;
  try {
    record = experiment::run_experiment(config);
  } catch (const std::exception& e) {
    err << "error: run failed: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  for (const auto& w : record.warnings) err << "warning: " << w << "\n";

  const std::string text = config.format == experiment::OutputFormat::json
                               ? record.to_json().dump(2) + "\n"
                               : experiment::to_csv(record);
  if (config.output_path.empty()) {
    out << text;
    return kExitOk;
  }
  const auto path = resolve_output_path(config.output_path);
  if (!write_file(path, text, err)) return kExitInvalidInput;
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

inline int cmd_verify(verify::Level level, bool inject_fault, std::ostream& out) {
  verify::VerifyOptions opts;
  opts.level = level;
  opts.corrupt_projector = inject_fault;
  const auto results = verify::run_verification(opts);
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    failed += r.passed ? 0 : 1;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed ? kExitVerificationFailed : kExitOk;
}

}  // namespace symstab::cli
