#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "daz/model.hpp"

namespace daz::app {

enum class SamplerKind { Daz, Myula };

std::string_view to_string(SamplerKind kind);
SamplerKind sampler_from_string(std::string_view name);

/// Settings of the long MYULA run that stands in for exact marginals on
/// image models.
struct ReferenceRunConfig {
  std::size_t chains = 100;
  std::size_t burn_in = 2000;
  std::size_t samples_per_chain = 100;
  std::size_t thin = 100;
  std::uint64_t seed = 2024;
};

struct ModelConfig {
  ModelKind kind = ModelKind::Laplace;
  double lambda = 1.0;
  double sigma = 0.1;
  std::vector<MixtureComponent> components;
  std::size_t dim = 1;   // laplace and tv-chain
  std::size_t rows = 1;  // tv-image
  std::size_t cols = 1;
};

struct ExperimentConfig {
  std::string experiment = "laplace";
  SamplerKind sampler = SamplerKind::Daz;
  double t_min = 1e-3;
  double t_max = 10.0;
  std::size_t levels = 1000;
  std::size_t inner_steps = 1;
  double step_scale = 1.0;
  std::size_t chains = 100000;
  std::uint64_t seed = 0;
  std::size_t bins = 128;
  std::size_t labels = 256;
  std::string out;
  std::string data;

  // only settable from a config file
  ModelConfig model;
  std::optional<std::pair<double, double>> range;
  std::size_t workers = 1;
  std::size_t checkpoint_every = 0;
  std::vector<double> init_center;
  double init_scale = 1.0;
  std::uint64_t data_seed = 1;
  double prox_tol = 1e-8;
  std::size_t prox_max_sweeps = 500;
  ReferenceRunConfig reference;
  std::vector<double> envelope_ts{0.1, 0.5, 1.0, 2.0};

  void validate() const;
};

/// Experiment preset. "custom" starts from the preset of `model_kind`.
ExperimentConfig default_config(const std::string& experiment,
                                std::optional<ModelKind> model_kind = std::nullopt);

/// Applies the keys of a JSON object on top of `config`. Keys mirror the
/// command line flags ("t-min", "inner-steps", ...). Unknown keys throw.
void apply_json(ExperimentConfig& config, const nlohmann::json& j);

nlohmann::json load_json_file(const std::filesystem::path& path);

/// Fully resolved configuration as JSON, with the same key names.
nlohmann::json to_json(const ExperimentConfig& config);

/// Hash over everything that influences results. Worker count, output
/// directory and the data path string are excluded; the data contents enter
/// through `data_digest`.
std::string config_hash(const ExperimentConfig& config, const std::string& data_digest);

/// Hash over the target and its reference only, so runs that differ in
/// their sampler settings still compare equal.
std::string reference_hash(const ExperimentConfig& config, const std::string& data_digest);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace daz::app
