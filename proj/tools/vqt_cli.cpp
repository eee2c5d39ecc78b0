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

#include <algorithm>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vqt/errors.hpp"
#include "vqt/runner.hpp"

namespace {

struct Options {
  std::string config;
  bool dry_run = false;
  std::string out;
  std::string seeds;
  unsigned parallel = 0;
  std::size_t samples = 0;
  std::string claim;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("config", o.config, "INI configuration file")->required();
  cmd->add_flag("--dry-run", o.dry_run, "Print the resolved plan and exit");
  cmd->add_option("--out", o.out, "Output directory (overrides output.dir)");
  cmd->add_option("--parallel", o.parallel, "Worker threads for independent runs")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated-cost training and bound checks for noisy variational circuits"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Train with the configured step cost for each seed");
  add_common(run, o);
  run->add_option("--seed", o.seeds, "Seed list, e.g. 0,1,2 or 0-4");

  auto* compare = app.add_subcommand("compare", "Paired runs of the configured costs for each seed");
  add_common(compare, o);
  compare->add_option("--seed", o.seeds, "Seed list, e.g. 0,1,2 or 0-4");

  auto* survey = app.add_subcommand("survey", "Gradient-norm survey over random parameters");
  add_common(survey, o);
  survey->add_option("--seed", o.seeds, "Sampling seed");
  survey->add_option("--samples", o.samples, "Number of random parameter vectors")->check(CLI::PositiveNumber);

  auto* bounds = app.add_subcommand("bounds-check", "Numerical checks of the analytic bounds");
  add_common(bounds, o);
  bounds->add_option("--seed", o.seeds, "Sampling seed");
  bounds->add_option("--samples", o.samples, "Samples per claim")->check(CLI::PositiveNumber);
  bounds->add_option("--claim", o.claim, "Check a single claim (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  vqt::RunConfig cfg;
  try {
    cfg = vqt::load_run_config(o.config);
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (o.parallel > 0) cfg.parallel = o.parallel;
    if (!o.seeds.empty()) {
      const auto seeds = vqt::parse_seed_list(o.seeds);
      if (command == "survey") {
        cfg.survey_seed = seeds.front();
      } else if (command == "bounds-check") {
        cfg.bound_seed = seeds.front();
      } else {
        cfg.seeds = seeds;
      }
    }
    if (o.samples > 0) {
      if (command == "survey") cfg.survey_samples = o.samples;
      if (command == "bounds-check") cfg.bound_samples = o.samples;
    }
    if (command == "bounds-check" && !o.claim.empty()) {
      const auto& ids = vqt::claim_ids();
      if (std::find(ids.begin(), ids.end(), o.claim) == ids.end()) {
        std::cerr << "error: unknown claim '" << o.claim << "'; valid claims are:\n";
        for (const auto& id : ids) std::cerr << "  " << id << "\n";
        return 1;
      }
    }
    if (o.dry_run) {
      std::cout << vqt::describe_plan(cfg, command);
      return 0;
    }
  } catch (const vqt::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (command == "run") return vqt::command_run(cfg, std::cout);
    if (command == "compare") return vqt::command_compare(cfg, std::cout);
    if (command == "survey") return vqt::command_survey(cfg, std::cout);
    const int code = vqt::command_bounds_check(cfg, o.claim, std::cout);
    if (code != 0) std::cerr << "runtime failure in stage bounds-check: at least one claim was violated\n";
    return code;
  } catch (const vqt::Error& e) {
    if (e.code() == vqt::ErrorCode::ConfigError) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    }
    std::cerr << "runtime failure in stage " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure in stage " << command << ": " << e.what() << "\n";
    return 2;
  }
}
