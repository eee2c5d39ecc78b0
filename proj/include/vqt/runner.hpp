// Copyright 2026 The vqt Authors
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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vqt/theory.hpp"
#include "vqt/trainer.hpp"

namespace vqt {

/// Everything a run needs, resolved from a key = value config file.
struct RunConfig {
  std::filesystem::path source;

  // [problem]: either a shipped benchmark id or an instance file with an encoder.
  std::string benchmark;
  std::filesystem::path instance;
  std::string encoder;  // maxcut | vertex-cover | vqe
  int electrons = -1;
  double penalty = 0.0;
  int symmetry_qubit = 2;

  // [ansatz]
  int blocks = 5;
  HeaOptions ansatz;
  bool initial_bits_set = false;

  NoiseModel noise;

  // [cost]: run trains `step` when it is set, otherwise every cost in
  // `compare`.
  CostVariant step = CostVariant::C2Reg;
  bool step_set = false;
  std::vector<CostVariant> compare = {CostVariant::C1, CostVariant::C2Reg};

  TrainConfig train;

  // [survey]
  std::size_t survey_samples = 20;
  double survey_fd_eps = 1e-3;
  std::uint64_t survey_seed = 7;

  // [bounds]
  std::size_t bound_samples = 50;
  std::vector<double> epsilons = {0.1, 0.01, 0.5};
  std::uint64_t bound_seed = 11;

  // [output]
  std::filesystem::path output_dir = "results";
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  unsigned parallel = 1;

  /// Hex FNV-1a of every field that can change a per-seed result. Output
  /// location, seed list and parallelism are excluded.
  std::string hash() const;
};

/// Throws Error(ConfigError) naming the line or the section.key at fault.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::istream& in, const std::filesystem::path& source = {});

ProblemInstance resolve_instance(const RunConfig& cfg);
AnsatzSpec resolve_ansatz(const RunConfig& cfg, const ProblemInstance& p);

/// Human-readable plan printed by --dry-run.
std::string describe_plan(const RunConfig& cfg, const std::string& command);

/// Subcommands. Each writes its artifacts under cfg.output_dir and returns
/// the process exit code (0 ok, 2 runtime failure). Config problems throw.
int command_run(const RunConfig& cfg, std::ostream& log);
int command_compare(const RunConfig& cfg, std::ostream& log);
int command_survey(const RunConfig& cfg, std::ostream& log);
/// Empty claim runs every claim.
int command_bounds_check(const RunConfig& cfg, const std::string& claim, std::ostream& log);

/// Per-seed CSV file: `# config_hash=<hash>` line, then the trainer columns.
std::filesystem::path train_csv_path(const RunConfig& cfg, CostVariant cost, std::uint64_t seed);

/// Parses "0, 1, 2" or "0-4".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace vqt
