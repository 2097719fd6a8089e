#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "daz/model.hpp"

namespace daz::app {

struct ResolvedModel {
  ModelSpec spec;
  std::string data_source;  // "none", "synthetic" or the data file path
  std::vector<double> clean;  // noise-free synthetic signal, when generated
  std::string data_digest;
};

/// Builds the model of an experiment, loading or generating data as needed.
ResolvedModel build_model(const ExperimentConfig& config);

struct RunResult {
  std::filesystem::path out_dir;
  double final_tv_error = 0.0;
  std::uint64_t iterations = 0;
  nlohmann::json metadata;  // contents of run.json
};

/// Runs one experiment end to end and writes its output directory.
/// Progress lines go to `log` when it is non-null.
RunResult run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

}  // namespace daz::app
