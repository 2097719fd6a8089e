#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "daz/errors.hpp"

namespace daz::app {

using nlohmann::json;

std::string_view to_string(SamplerKind kind) {
  return kind == SamplerKind::Daz ? "daz" : "myula";
}

SamplerKind sampler_from_string(std::string_view name) {
  if (name == "daz") return SamplerKind::Daz;
  if (name == "myula") return SamplerKind::Myula;
  throw InvalidArgument("unknown sampler '" + std::string(name) + "' (expected daz or myula)");
}

ExperimentConfig default_config(const std::string& experiment,
                                std::optional<ModelKind> model_kind) {
  ModelKind kind;
  if (experiment == "custom") {
    if (!model_kind) throw InvalidArgument("custom experiment requires model.kind in the config file");
    kind = *model_kind;
  } else {
    kind = model_kind_from_string(experiment);
    if (model_kind && *model_kind != kind)
      throw InvalidArgument("model.kind conflicts with experiment '" + experiment + "'");
  }

  ExperimentConfig c;
  c.experiment = experiment;
  c.model.kind = kind;
  switch (kind) {
    case ModelKind::Laplace:
      c.model.lambda = 1.0;
      c.t_min = 1e-3;
      c.t_max = 0.3;
      c.levels = 1000;
      c.chains = 100000;
      c.bins = 128;
      break;
    case ModelKind::GaussianMixture:
      c.model.components = {{-1.0, 0.5, 0.25}, {1.0, 0.5, 0.25}};
      c.t_min = 1e-3;
      c.t_max = 10.0;
      c.levels = 1000;
      c.chains = 100000;
      c.bins = 128;
      // start inside one mode so that mode coverage has to be earned
      c.init_center = {1.0};
      break;
    case ModelKind::TVChain:
      c.model.dim = 100;
      c.model.sigma = 0.1;
      c.model.lambda = 30.0;
      c.t_min = 1e-5;
      c.t_max = 1.0;
      c.levels = 2000;
      c.chains = 10000;
      c.labels = 256;
      break;
    case ModelKind::TVImage:
      c.model.rows = 32;
      c.model.cols = 32;
      c.model.sigma = 0.05;
      c.model.lambda = 30.0;
      c.t_min = 1e-5;
      c.t_max = 1.0;
      c.levels = 2000;
      c.chains = 1000;
      c.labels = 64;
      break;
  }
  return c;
}

namespace {

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument("config key '" + key + "' has the wrong type");
  }
}

void apply_model(ModelConfig& m, const json& j) {
  if (!j.is_object()) throw InvalidArgument("config key 'model' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") {
      if (model_kind_from_string(get_as<std::string>(value, "model.kind")) != m.kind)
        throw InvalidArgument("model.kind conflicts with the experiment");
    } else if (key == "lambda") {
      m.lambda = get_as<double>(value, "model.lambda");
    } else if (key == "sigma") {
      m.sigma = get_as<double>(value, "model.sigma");
    } else if (key == "dim") {
      m.dim = get_as<std::size_t>(value, "model.dim");
    } else if (key == "rows") {
      m.rows = get_as<std::size_t>(value, "model.rows");
    } else if (key == "cols") {
      m.cols = get_as<std::size_t>(value, "model.cols");
    } else if (key == "components") {
      if (!value.is_array()) throw InvalidArgument("model.components must be an array");
      m.components.clear();
      for (const auto& c : value) {
        MixtureComponent comp;
        comp.mean = get_as<double>(c.at("mean"), "model.components.mean");
        comp.weight = get_as<double>(c.at("weight"), "model.components.weight");
        comp.stddev = get_as<double>(c.at("stddev"), "model.components.stddev");
        m.components.push_back(comp);
      }
    } else {
      throw InvalidArgument("unknown config key 'model." + key + "'");
    }
  }
}

void apply_reference(ReferenceRunConfig& r, const json& j) {
  if (!j.is_object()) throw InvalidArgument("config key 'reference' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "chains") r.chains = get_as<std::size_t>(value, "reference.chains");
    else if (key == "burn-in") r.burn_in = get_as<std::size_t>(value, "reference.burn-in");
    else if (key == "samples-per-chain")
      r.samples_per_chain = get_as<std::size_t>(value, "reference.samples-per-chain");
    else if (key == "thin") r.thin = get_as<std::size_t>(value, "reference.thin");
    else if (key == "seed") r.seed = get_as<std::uint64_t>(value, "reference.seed");
    else throw InvalidArgument("unknown config key 'reference." + key + "'");
  }
}

}  // namespace

void apply_json(ExperimentConfig& c, const json& j) {
  if (!j.is_object()) throw InvalidArgument("config file must contain a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") {
      if (get_as<std::string>(value, key) != c.experiment)
        throw InvalidArgument("config file experiment '" + value.get<std::string>() +
                              "' conflicts with '" + c.experiment + "'");
    } else if (key == "sampler") c.sampler = sampler_from_string(get_as<std::string>(value, key));
    else if (key == "t-min") c.t_min = get_as<double>(value, key);
    else if (key == "t-max") c.t_max = get_as<double>(value, key);
    else if (key == "levels") c.levels = get_as<std::size_t>(value, key);
    else if (key == "inner-steps") c.inner_steps = get_as<std::size_t>(value, key);
    else if (key == "step-scale") c.step_scale = get_as<double>(value, key);
    else if (key == "chains") c.chains = get_as<std::size_t>(value, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(value, key);
    else if (key == "bins") c.bins = get_as<std::size_t>(value, key);
    else if (key == "labels") c.labels = get_as<std::size_t>(value, key);
    else if (key == "out") c.out = get_as<std::string>(value, key);
    else if (key == "data") c.data = get_as<std::string>(value, key);
    else if (key == "model") apply_model(c.model, value);
    else if (key == "range") {
      if (value.is_null()) {
        c.range.reset();
      } else {
        const auto r = get_as<std::vector<double>>(value, key);
        if (r.size() != 2) throw InvalidArgument("config key 'range' needs two values");
        c.range = std::make_pair(r[0], r[1]);
      }
    }
    else if (key == "workers") c.workers = get_as<std::size_t>(value, key);
    else if (key == "checkpoint-every") c.checkpoint_every = get_as<std::size_t>(value, key);
    else if (key == "init-center") c.init_center = get_as<std::vector<double>>(value, key);
    else if (key == "init-scale") c.init_scale = get_as<double>(value, key);
    else if (key == "data-seed") c.data_seed = get_as<std::uint64_t>(value, key);
    else if (key == "prox-tol") c.prox_tol = get_as<double>(value, key);
    else if (key == "prox-max-sweeps") c.prox_max_sweeps = get_as<std::size_t>(value, key);
    else if (key == "reference") apply_reference(c.reference, value);
    else if (key == "envelope-ts") c.envelope_ts = get_as<std::vector<double>>(value, key);
    else throw InvalidArgument("unknown config key '" + key + "'");
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file '" + path.string() + "': " + e.what());
  }
}

void ExperimentConfig::validate() const {
  if (!(t_min > 0.0) || !std::isfinite(t_min)) throw InvalidArgument("t-min must be positive");
  if (sampler == SamplerKind::Daz && levels > 1 && !(t_max > t_min))
    throw InvalidArgument("t-max must exceed t-min");
  if (levels == 0) throw InvalidArgument("levels must be positive");
  if (inner_steps == 0) throw InvalidArgument("inner-steps must be positive");
  if (!(step_scale > 0.0 && step_scale < 2.0)) throw InvalidArgument("step-scale must lie in (0, 2)");
  if (chains == 0) throw InvalidArgument("chains must be positive");
  if (bins < 2) throw InvalidArgument("bins must be at least 2");
  if (labels < 2) throw InvalidArgument("labels must be at least 2");
  if (workers == 0) throw InvalidArgument("workers must be positive");
  if (out.empty()) throw InvalidArgument("out must name a directory");
  if (!(init_scale >= 0.0)) throw InvalidArgument("init-scale must be nonnegative");
  if (!(prox_tol > 0.0)) throw InvalidArgument("prox-tol must be positive");
  if (range && !(range->second > range->first)) throw InvalidArgument("range must be increasing");
  if (reference.chains == 0 || reference.samples_per_chain == 0 || reference.thin == 0)
    throw InvalidArgument("reference run sizes must be positive");
  for (double t : envelope_ts)
    if (!(t > 0.0)) throw InvalidArgument("envelope-ts must be positive");
  const bool scalar = model.kind == ModelKind::Laplace || model.kind == ModelKind::GaussianMixture;
  if (scalar && !data.empty()) throw InvalidArgument("--data applies to tv-chain and tv-image only");
  if (model.kind == ModelKind::Laplace && model.dim != 1)
    throw InvalidArgument("the laplace experiment is one-dimensional");
}

json to_json(const ExperimentConfig& c) {
  json model{{"kind", std::string(daz::to_string(c.model.kind))}};
  switch (c.model.kind) {
    case ModelKind::Laplace:
      model["lambda"] = c.model.lambda;
      model["dim"] = c.model.dim;
      break;
    case ModelKind::GaussianMixture: {
      json comps = json::array();
      for (const auto& m : c.model.components)
        comps.push_back({{"mean", m.mean}, {"weight", m.weight}, {"stddev", m.stddev}});
      model["components"] = comps;
      break;
    }
    case ModelKind::TVChain:
      model["lambda"] = c.model.lambda;
      model["sigma"] = c.model.sigma;
      model["dim"] = c.model.dim;
      break;
    case ModelKind::TVImage:
      model["lambda"] = c.model.lambda;
      model["sigma"] = c.model.sigma;
      model["rows"] = c.model.rows;
      model["cols"] = c.model.cols;
      break;
  }
  json j{{"experiment", c.experiment},
         {"sampler", std::string(to_string(c.sampler))},
         {"t-min", c.t_min},
         {"t-max", c.t_max},
         {"levels", c.levels},
         {"inner-steps", c.inner_steps},
         {"step-scale", c.step_scale},
         {"chains", c.chains},
         {"seed", c.seed},
         {"bins", c.bins},
         {"labels", c.labels},
         {"out", c.out},
         {"data", c.data},
         {"model", model},
         {"range", c.range ? json{c.range->first, c.range->second} : json(nullptr)},
         {"workers", c.workers},
         {"checkpoint-every", c.checkpoint_every},
         {"init-center", c.init_center},
         {"init-scale", c.init_scale},
         {"data-seed", c.data_seed},
         {"prox-tol", c.prox_tol},
         {"prox-max-sweeps", c.prox_max_sweeps},
         {"reference",
          {{"chains", c.reference.chains},
           {"burn-in", c.reference.burn_in},
           {"samples-per-chain", c.reference.samples_per_chain},
           {"thin", c.reference.thin},
           {"seed", c.reference.seed}}},
         {"envelope-ts", c.envelope_ts}};
  return j;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const ExperimentConfig& config, const std::string& data_digest) {
  json j = to_json(config);
  j.erase("workers");
  j.erase("out");
  j.erase("data");
  j["data-digest"] = data_digest;
  return fnv1a_hex(j.dump());
}

std::string reference_hash(const ExperimentConfig& config, const std::string& data_digest) {
  const json full = to_json(config);
  json j{{"experiment", full["experiment"]}, {"model", full["model"]},
         {"bins", full["bins"]},             {"labels", full["labels"]},
         {"range", full["range"]},           {"data-digest", data_digest}};
  // the image reference is produced by a run of its own; its settings matter
  if (config.model.kind == ModelKind::TVImage) {
    j["reference"] = full["reference"];
    j["t-min"] = full["t-min"];
    j["step-scale"] = full["step-scale"];
    j["prox-tol"] = full["prox-tol"];
  }
  return fnv1a_hex(j.dump());
}

}  // namespace daz::app
