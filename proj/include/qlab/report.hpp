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

#pragma once

#include <string>

#include <json.hpp>

#include "qlab/config.hpp"

namespace qlab {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInconsistent = 2;

struct ReportBundle {
  nlohmann::ordered_json report;
  std::string cyclicity_csv;
  std::string profile_csv;
  /// False when a sampled verdict contradicts its algebraic prediction.
  bool consistent = true;
};

/// Runs the configured experiments. Throws qlab::Error on invalid input.
ReportBundle run(const ExperimentConfig& config);

/// Writes report.json, cyclicity.csv and profile.csv into `out_dir`
/// (created when missing). Throws Error(Io) on failure.
void emit_report(const ReportBundle& bundle, const std::string& out_dir);

/// Fixed-format float for CSV output (17 significant digits).
std::string format_double(double v);

}  // namespace qlab
