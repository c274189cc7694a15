#pragma once

#include "mcdiff/harness.hpp"
#include "mcdiff/mixture.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace mcdiff {

/// Everything one CLI invocation needs, loaded from a JSON file.
struct ExperimentConfig {
  MixtureSpec mixture;
  int cells = 1024;
  double length = 1.0;
  double t_end = 0.05;
  double cfl = 0.5;
  std::vector<double> snapshot_times;
  InitialProfile initial;
  std::vector<double> eps_list;
  double order_min = 1.6;
  double order_max = 2.4;
  std::string output_directory = "out";
};

/// Throws ConfigError on missing keys, wrong types or broken invariants.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Parses and validates a file. Syntax errors carry line and column.
ExperimentConfig load_config(const std::string& path);

/// The standard sweep experiment.
ExperimentConfig default_config();

} // namespace mcdiff
