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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qlab/knight.hpp"
#include "qlab/measure.hpp"
#include "qlab/models.hpp"

namespace qlab {

struct ModelSpec {
  std::string kind = "chain";  // chain | klein_gordon | custom
  // chain
  Eigen::Index n = 2;
  double coupling = 1.0;
  double pinning = 1.0;
  bool periodic = false;
  // klein_gordon
  Eigen::Index grid_points = 8;
  double mass = 1.0;
  double spacing = 1.0;
  // custom
  std::vector<std::vector<double>> entries;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct PhasePointSpec {
  std::vector<double> q;
  std::vector<double> p;
  friend bool operator==(const PhasePointSpec&, const PhasePointSpec&) = default;
};

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"locality", "knight",     "coherent", "licht",
                                                 "cyclicity", "separability", "measure", "all"};
  return kinds;
}

struct ExperimentConfig {
  ModelSpec model;
  std::vector<Eigen::Index> region = {0};
  std::string experiment = "all";
  SamplerSpec sampler;
  int truncation = 12;
  int max_degree = 8;
  std::vector<WindowEvent> windows;
  std::string out_dir = "qlab_out";
  // Optional state overrides; defaults are derived from the region.
  std::optional<std::vector<double>> knight_xi_re;
  std::optional<std::vector<double>> knight_xi_im;
  std::optional<PhasePointSpec> coherent_x;
  std::optional<PhasePointSpec> licht_x1;
  std::optional<PhasePointSpec> licht_x2;

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

/// Parses a TOML document. Errors carry the offending key or source line.
ExperimentConfig parse_config_toml(const std::string& text, const std::string& source_name = "<config>");
ExperimentConfig load_config_file(const std::string& path);

/// Echo used in the report; parse_config_json(config_to_json(c)) == c.
nlohmann::ordered_json config_to_json(const ExperimentConfig& c);
ExperimentConfig parse_config_json(const nlohmann::json& j);

/// Cross-reference checks (indices within n, proper region, positive counts).
void validate_config(const ExperimentConfig& c);

DynamicalMatrix build_model(const ModelSpec& m);

}  // namespace qlab
