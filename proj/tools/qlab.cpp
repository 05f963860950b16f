// Copyright 2026 The qlab Authors
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

// qlab <config.toml> [--experiment K] [--seed S] [--out-dir D]
//
// Exit codes: 0 success, 1 input or I/O error, 2 a sampled verdict
// contradicted its algebraic prediction.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qlab/config.hpp"
#include "qlab/error.hpp"
#include "qlab/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for localized vacuum excitations of harmonic lattices"};
  std::string config_path;
  std::optional<std::string> experiment;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  app.add_option("config", config_path, "TOML experiment configuration")->required();
  app.add_option("--experiment", experiment,
                 "locality | knight | coherent | licht | cyclicity | separability | measure | all");
  app.add_option("--seed", seed, "sampler seed (overrides sampler.seed)");
  app.add_option("--out-dir", out_dir, "output directory (overrides output.dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qlab::kExitOk : qlab::kExitInputError;
  }

  try {
    qlab::ExperimentConfig config = qlab::load_config_file(config_path);
    if (experiment) config.experiment = *experiment;
    if (seed) config.sampler.seed = *seed;
    if (out_dir) config.out_dir = *out_dir;

    const qlab::ReportBundle bundle = qlab::run(config);
    qlab::emit_report(bundle, config.out_dir);

    std::cout << "wrote " << config.out_dir << "/report.json\n";
    if (!bundle.consistent) {
      for (const auto& msg : bundle.report["inconsistencies"]) std::cerr << "inconsistent: " << msg.get<std::string>() << '\n';
      return qlab::kExitInconsistent;
    }
    return qlab::kExitOk;
  } catch (const qlab::Error& e) {
    std::cerr << "qlab: " << e.what() << '\n';
    return qlab::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "qlab: " << e.what() << '\n';
    return qlab::kExitInputError;
  }
}
