// Copyright 2026 The mmshare Authors
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

#include "mmshare/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunArgs
{
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> seed;
  std::optional<std::string> reps;
  std::optional<std::string> mode;
  std::optional<std::string> weight;
  std::optional<std::string> threads;
  std::vector<std::string> settings;
};

int do_run(const RunArgs & args)
{
  mmshare::ExperimentConfig cfg;
  if (!args.config.empty()) {
    cfg = mmshare::load_experiment_config(args.config);
  }
  for (const auto & s : args.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw mmshare::ConfigError("--set expects key=value, got '" + s + "'");
    }
    mmshare::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  const std::pair<const char *, const std::optional<std::string> *> overrides[] = {
    {"output", &args.out},          {"seed_base", &args.seed},     {"replications", &args.reps},
    {"conflict_mode", &args.mode}, {"weight_mode", &args.weight}, {"threads", &args.threads},
  };
  for (const auto & [key, value] : overrides) {
    if (value->has_value()) {
      mmshare::apply_setting(cfg, key, **value);
    }
  }
  const auto files = mmshare::run_experiment(cfg);
  std::cout << "wrote " << files.slots_csv.string() << ", " << files.runs_csv.string() << ", "
            << files.summary_json.string() << "\n";
  return 0;
}

int do_summarize(const std::vector<std::string> & inputs, const std::string & out)
{
  std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
  const std::string summary = mmshare::summarize(paths);
  if (out.empty()) {
    std::cout << summary;
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file || !(file << summary)) {
    throw std::runtime_error("cannot write " + out);
  }
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"mmWave cooperative-perception data sharing simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto * run_cmd = app.add_subcommand("run", "Run a Monte-Carlo sweep and write CSV and summary outputs");
  run_cmd->add_option("--config", run.config, "key = value configuration file");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--seed", run.seed, "Seed of replication 0");
  run_cmd->add_option("--reps", run.reps, "Replications per sweep case");
  run_cmd->add_option("--mode", run.mode, "Conflict rule(s): basic-only, conventional-d, mmwave-d-prime");
  run_cmd->add_option("--weight", run.weight, "Weight mode(s): max-transmission, max-distance");
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)");
  run_cmd->add_option("--set", run.settings, "Extra key=value setting, applied after --config");

  std::vector<std::string> inputs;
  std::string summary_out;
  auto * sum_cmd = app.add_subcommand("summarize", "Aggregate slots/runs CSV files into a summary document");
  sum_cmd->add_option("csv", inputs, "CSV files written by run")->required();
  sum_cmd->add_option("--out", summary_out, "Write the summary here instead of stdout");

  std::vector<std::size_t> counts{10, 15, 20};
  auto * bounds_cmd = app.add_subcommand("bounds", "Print slot-count bounds per vehicle count");
  bounds_cmd->add_option("--n", counts, "Vehicle counts")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run_cmd) {
      return do_run(run);
    }
    if (*sum_cmd) {
      return do_summarize(inputs, summary_out);
    }
    std::cout << mmshare::bounds_table(counts);
    return 0;
  } catch (const mmshare::ConfigError & e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error & e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
