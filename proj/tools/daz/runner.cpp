#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include "daz/bp.hpp"
#include "daz/csv.hpp"
#include "daz/errors.hpp"
#include "daz/evaluation.hpp"
#include "daz/moreau.hpp"
#include "daz/potentials.hpp"
#include "daz/samplers.hpp"
#include "daz/schedule.hpp"
#include "synthetic.hpp"

namespace daz::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string digest_values(const std::vector<double>& v) {
  std::string bytes;
  for (double x : v) {
    bytes += format_double(x);
    bytes += ',';
  }
  return fnv1a_hex(bytes);
}

std::pair<double, double> scalar_range(const ExperimentConfig& c, const ModelSpec& m) {
  if (c.range) return *c.range;
  if (m.kind == ModelKind::Laplace) return {-6.0 / m.lambda, 6.0 / m.lambda};
  double lo = m.components.front().mean, hi = lo, s = 0.0;
  for (const auto& comp : m.components) {
    lo = std::min(lo, comp.mean);
    hi = std::max(hi, comp.mean);
    s = std::max(s, comp.stddev);
  }
  return {lo - 6.0 * s, hi + 6.0 * s};
}

std::pair<double, double> label_range(const ExperimentConfig& c, const ModelSpec& m) {
  if (c.range) return *c.range;
  return default_label_range(m);
}

std::vector<double> scalar_kinks(const ModelSpec& m) {
  if (m.kind == ModelKind::Laplace) return {0.0};
  std::vector<double> k;
  for (const auto& comp : m.components) k.push_back(comp.mean);
  return k;
}

// Per-coordinate histograms accumulated over many snapshots.
class MarginalAccumulator {
 public:
  MarginalAccumulator(std::size_t dim, std::vector<double> edges)
      : dim_(dim), edges_(std::move(edges)), counts_(dim * (edges_.size() - 1), 0) {}

  void add(const ChainEnsemble& e) {
    const std::size_t L = edges_.size() - 1;
    const double lo = edges_.front(), hi = edges_.back();
    const double scale = static_cast<double>(L) / (hi - lo);
    for (std::size_t c = 0; c < e.n_chains; ++c) {
      for (std::size_t i = 0; i < dim_; ++i) {
        const double v = e.states[c * dim_ + i];
        std::size_t b;
        if (v < lo) {
          b = 0;
          ++clipped_;
        } else if (v >= hi) {
          b = L - 1;
          ++clipped_;
        } else {
          b = std::min(L - 1, static_cast<std::size_t>((v - lo) * scale));
        }
        ++counts_[i * L + b];
      }
    }
    samples_ += e.n_chains;
  }

  MarginalTable table() const {
    MarginalTable t{edges_, std::vector<double>(counts_.size())};
    for (std::size_t k = 0; k < counts_.size(); ++k)
      t.probs[k] = static_cast<double>(counts_[k]) / static_cast<double>(samples_);
    return t;
  }

  std::uint64_t samples() const { return samples_; }
  std::uint64_t clipped() const { return clipped_; }

 private:
  std::size_t dim_;
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t samples_ = 0;
  std::uint64_t clipped_ = 0;
};

void write_metrics_csv(const fs::path& path, const MetricsLog& log, const std::string& hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << "# config_hash=" << hash << '\n' << "iter,t,tau,tv_error\n";
  for (const auto& r : log.records) {
    out << r.iteration << ',' << format_double(r.t) << ',' << format_double(r.tau) << ','
        << format_double(r.tv_error) << '\n';
  }
}

void write_envelope_csv(const fs::path& path, const ModelSpec& m,
                        const std::vector<double>& ts, double lo, double hi,
                        const std::string& hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << "# config_hash=" << hash << '\n' << "# t=0 rows hold G itself\n" << "t,x,value\n";
  const int n = 601;
  std::vector<double> row{0.0};
  for (int k = 0; k < n; ++k) {
    row[0] = lo + (hi - lo) * k / (n - 1);
    out << "0," << format_double(row[0]) << ',' << format_double(eval_G(m, row)) << '\n';
  }
  for (double t : ts) {
    for (int k = 0; k < n; ++k) {
      row[0] = lo + (hi - lo) * k / (n - 1);
      out << format_double(t) << ',' << format_double(row[0]) << ','
          << format_double(envelope(m, row, t).value) << '\n';
    }
  }
}

void write_matrix_csv(const fs::path& path, const std::vector<double>& v, std::size_t rows,
                      std::size_t cols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out << (j ? "," : "") << format_double(v[i * cols + j]);
    out << '\n';
  }
}

}  // namespace

ResolvedModel build_model(const ExperimentConfig& c) {
  ResolvedModel r;
  const auto& mc = c.model;
  switch (mc.kind) {
    case ModelKind::Laplace:
      r.spec = ModelSpec::laplace(mc.lambda, mc.dim);
      r.data_source = "none";
      break;
    case ModelKind::GaussianMixture:
      r.spec = ModelSpec::gaussian_mixture(mc.components);
      r.data_source = "none";
      break;
    case ModelKind::TVChain:
    case ModelKind::TVImage: {
      std::vector<double> y;
      std::size_t rows = 1, cols = 1;
      if (!c.data.empty()) {
        const auto table = read_numeric_csv(c.data);
        if (table.empty()) throw InvalidArgument("data file '" + c.data + "' holds no values");
        for (const auto& row : table) {
          if (mc.kind == ModelKind::TVImage && row.size() != table.front().size())
            throw InvalidArgument("data file '" + c.data + "': rows differ in length");
          y.insert(y.end(), row.begin(), row.end());
        }
        if (mc.kind == ModelKind::TVImage) {
          rows = table.size();
          cols = table.front().size();
        } else {
          cols = y.size();
        }
        r.data_source = c.data;
      } else {
        const auto data = mc.kind == ModelKind::TVChain
                              ? synthetic_chain(mc.dim, mc.sigma, c.data_seed)
                              : synthetic_image(mc.rows, mc.cols, mc.sigma, c.data_seed);
        y = data.noisy;
        r.clean = data.clean;
        rows = mc.kind == ModelKind::TVChain ? 1 : mc.rows;
        cols = mc.kind == ModelKind::TVChain ? mc.dim : mc.cols;
        r.data_source = "synthetic";
      }
      r.spec = mc.kind == ModelKind::TVChain
                   ? ModelSpec::tv_chain(y, mc.sigma, mc.lambda)
                   : ModelSpec::tv_image(y, rows, cols, mc.sigma, mc.lambda);
      r.data_digest = digest_values(y);
      break;
    }
  }
  r.spec.validate();
  return r;
}

RunResult run_experiment(const ExperimentConfig& config_in, std::ostream* log) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig c = config_in;
  if (c.out.empty()) c.out = "runs/" + c.experiment + "-" + std::string(to_string(c.sampler));
  c.validate();

  const ResolvedModel resolved = build_model(c);
  const ModelSpec& model = resolved.spec;
  if (model.kind == ModelKind::TVChain) c.model.dim = model.dim();
  if (model.kind == ModelKind::TVImage) {
    c.model.rows = model.rows;
    c.model.cols = model.cols;
  }
  const std::string hash = config_hash(c, resolved.data_digest);
  const std::string ref_hash = reference_hash(c, resolved.data_digest);
  const fs::path out_dir(c.out);
  fs::create_directories(out_dir);
  const std::vector<std::string> comments{"config_hash=" + hash};

  SamplerOptions opt;
  opt.workers = c.workers;
  opt.init_center = c.init_center;
  opt.init_scale = c.init_scale;
  opt.image_prox = {c.prox_tol, c.prox_max_sweeps};
  const std::size_t every_levels =
      c.checkpoint_every > 0 ? c.checkpoint_every : (c.levels + 199) / 200;

  json meta;
  json reference;
  EvalHook hook;

  // reference distributions
  std::vector<double> masses;
  double lo = 0.0, hi = 0.0;
  MarginalTable table;
  if (model.is_scalar()) {
    std::tie(lo, hi) = scalar_range(c, model);
    const PerturbedDensity1D target(model, 0.0);
    masses = reference_masses([&](double x) { return target(x); }, lo, hi, c.bins,
                              scalar_kinks(model));
    hook = [&](const ChainEnsemble& e) {
      return tv_distance(make_histogram(e.states, lo, hi, c.bins), masses);
    };
    meta["reference_method"] = "analytic-density";
    reference = {{"range", {lo, hi}}, {"bins", c.bins}};
  } else if (model.kind == ModelKind::TVChain) {
    std::tie(lo, hi) = label_range(c, model);
    table = chain_bp_marginals(model, c.labels, lo, hi);
    meta["reference_method"] = "chain-bp";
    reference = {{"range", {lo, hi}}, {"labels", c.labels}};
  } else if (model.kind == ModelKind::TVImage) {
    std::tie(lo, hi) = label_range(c, model);
    const double tau = step_size_rule(c.t_min, model, c.step_scale);
    const auto& rc = c.reference;
    MarginalAccumulator acc(model.dim(), uniform_edges(lo, hi, c.labels));
    SamplerOptions ropt = opt;
    ropt.init_center.clear();
    ropt.checkpoint_every = rc.thin;
    const std::uint64_t steps = rc.burn_in + rc.samples_per_chain * rc.thin;
    if (log) *log << "reference: " << rc.chains << " MYULA chains x " << steps << " steps\n";
    run_myula(model, c.t_min, tau, steps, rc.chains, rc.seed,
              [&](const ChainEnsemble& e) {
                if (e.iteration > rc.burn_in) acc.add(e);
                return 0.0;
              },
              ropt);
    table = acc.table();
    meta["reference_method"] = "myula-long-run";
    reference = {{"range", {lo, hi}},
                 {"labels", c.labels},
                 {"t", c.t_min},
                 {"tau", tau},
                 {"chains", rc.chains},
                 {"steps_per_chain", steps},
                 {"samples", acc.samples()},
                 {"clipped", acc.clipped()}};
  } else {
    throw InvalidArgument("unsupported model");
  }
  if (!model.is_scalar()) {
    hook = [&](const ChainEnsemble& e) { return marginal_tv(e, table); };
    write_marginals_csv(out_dir / "reference_marginals.csv", table, comments);
  }

  // sampler
  SamplerRun run;
  json sampler;
  if (log) *log << "running " << to_string(c.sampler) << " on " << c.experiment << " with "
                << c.chains << " chains\n";
  if (c.sampler == SamplerKind::Daz) {
    const auto schedule =
        make_schedule(c.t_min, c.t_max, c.levels, model, c.step_scale, c.inner_steps);
    opt.checkpoint_every = every_levels;
    run = run_daz(model, schedule, c.chains, c.seed, hook, opt);
    sampler = {{"kind", "daz"},
               {"levels", schedule.levels()},
               {"inner_steps", schedule.inner_steps},
               {"iterations", schedule.total_iterations()},
               {"t_first", schedule.ts.front()},
               {"t_last", schedule.ts.back()},
               {"tau_first", schedule.taus.front()},
               {"tau_last", schedule.taus.back()}};
  } else {
    const double tau = step_size_rule(c.t_min, model, c.step_scale);
    const std::uint64_t iters = static_cast<std::uint64_t>(c.levels) * c.inner_steps;
    opt.checkpoint_every = every_levels * c.inner_steps;
    run = run_myula(model, c.t_min, tau, iters, c.chains, c.seed, hook, opt);
    sampler = {{"kind", "myula"}, {"iterations", iters}, {"t", c.t_min}, {"tau", tau}};
  }
  sampler["checkpoint_every_levels"] = every_levels;
  const ChainEnsemble& ens = run.ensemble;

  // outputs
  write_metrics_csv(out_dir / "metrics.csv", run.metrics, hash);
  std::vector<std::string> outputs{"metrics.csv"};
  std::uint64_t clipped = 0;
  if (model.is_scalar()) {
    const auto hist = make_histogram(ens.states, lo, hi, c.bins);
    clipped = hist.clipped;
    write_histogram_csv(out_dir / "histogram.csv", hist, masses, comments);
    write_envelope_csv(out_dir / "envelope.csv", model, c.envelope_ts, lo, hi, hash);
    outputs.insert(outputs.end(), {"histogram.csv", "envelope.csv"});
    if (model.kind == ModelKind::GaussianMixture) {
      double mlo = model.components.front().mean, mhi = mlo;
      for (const auto& comp : model.components) {
        mlo = std::min(mlo, comp.mean);
        mhi = std::max(mhi, comp.mean);
      }
      const double split = 0.5 * (mlo + mhi);
      meta["mode_split"] = split;
      meta["mode_mass"] = mode_mass(ens.states, split);
      const auto scan = detect_uniqueness_threshold(model, 1e-4, 10.0);
      meta["prox_uniqueness"] = scan.found ? json{{"found", true}, {"t", scan.t}, {"x", scan.x}}
                                           : json{{"found", false}};
    }
  } else {
    MarginalAccumulator acc(model.dim(), table.edges);
    acc.add(ens);
    clipped = acc.clipped();
    write_marginals_csv(out_dir / "marginals.csv", acc.table(), comments);
    write_matrix_csv(out_dir / "data.csv", model.y, model.rows, model.cols);
    outputs.insert(outputs.end(), {"marginals.csv", "reference_marginals.csv", "data.csv"});
    if (!resolved.clean.empty()) {
      write_matrix_csv(out_dir / "clean.csv", resolved.clean, model.rows, model.cols);
      outputs.push_back("clean.csv");
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RunResult result;
  result.out_dir = out_dir;
  result.iterations = ens.iteration;
  result.final_tv_error = run.metrics.records.empty() ? hook(ens) : run.metrics.records.back().tv_error;
  outputs.push_back("run.json");

  meta["config"] = to_json(c);
  meta["config_hash"] = hash;
  meta["reference_hash"] = ref_hash;
  meta["data"] = {{"source", resolved.data_source}, {"digest", resolved.data_digest}};
  meta["seed"] = c.seed;
  meta["sampler"] = sampler;
  meta["reference"] = reference;
  meta["final_tv_error"] = result.final_tv_error;
  meta["iterations"] = ens.iteration;
  meta["checkpoints"] = run.metrics.records.size();
  meta["clipped"] = clipped;
  meta["wall_time_s"] = wall;
  meta["outputs"] = outputs;
  std::ofstream(out_dir / "run.json", std::ios::binary) << meta.dump(2) << '\n';
  result.metadata = std::move(meta);
  if (log) *log << "final tv_error " << format_double(result.final_tv_error) << ", wrote "
                << out_dir.string() << '\n';
  return result;
}

}  // namespace daz::app
