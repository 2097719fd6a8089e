#include "daz/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "daz/errors.hpp"
#include "daz/potentials.hpp"
#include "daz/rng.hpp"

namespace daz {

std::vector<double> ChainEnsemble::coordinate(std::size_t j) const {
  std::vector<double> out(n_chains);
  for (std::size_t c = 0; c < n_chains; ++c) out[c] = states[c * dim + j];
  return out;
}

bool ChainEnsemble::all_finite() const noexcept {
  return std::all_of(states.begin(), states.end(), [](double v) { return std::isfinite(v); });
}

void MetricsLog::append(const MetricsRecord& r) {
  if (!records.empty() && r.iteration <= records.back().iteration)
    throw InvalidArgument("metrics: iterations must be strictly increasing");
  if (!(r.tv_error >= 0.0 && r.tv_error <= 1.0))
    throw InvalidArgument("metrics: tv_error outside [0, 1]");
  records.push_back(r);
}

namespace {

// One ULA step on a single chain; returns false on a non-finite coordinate.
bool ula_update(const ModelSpec& model, const ProxOperator& prox, double tau,
                std::span<double> x, std::span<const double> z,
                std::span<double> grad, std::span<double> p) {
  const double t = prox.t();
  grad_F_into(model, x, grad);
  prox.apply(x, p);
  const double ratio = tau / t;
  const double noise = std::sqrt(2.0 * tau);
  bool finite = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = x[i] - tau * grad[i] - ratio * (x[i] - p[i]) + noise * z[i];
    finite = finite && std::isfinite(x[i]);
  }
  return finite;
}

struct Level {
  std::shared_ptr<const ProxOperator> prox;
  double tau;
};

struct ChainFailure {
  std::size_t chain = SIZE_MAX;
  std::exception_ptr error;
};

SamplerRun run_levels(const ModelSpec& model, const AnnealSchedule& schedule,
                      std::size_t n_chains, std::uint64_t seed,
                      const EvalHook& eval_hook, const SamplerOptions& options) {
  schedule.validate();
  model.validate();
  if (n_chains == 0) throw InvalidArgument("sampler: at least one chain required");
  const std::size_t d = model.dim();
  const std::size_t K = schedule.inner_steps;
  const std::size_t n_levels = schedule.levels();
  const std::size_t every = options.checkpoint_every > 0
                                ? options.checkpoint_every
                                : (n_levels + 199) / 200;
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, n_chains);

  SamplerRun run{initialize_chains(model, n_chains, seed, options), {}};
  ChainEnsemble& ens = run.ensemble;
  const NormalStream stream(seed);

  std::shared_ptr<const ProxOperator> cached;
  for (std::size_t l0 = 0; l0 < n_levels; l0 += every) {
    const std::size_t l1 = std::min(n_levels, l0 + every);
    std::vector<Level> levels;
    for (std::size_t l = l0; l < l1; ++l) {
      if (!cached || cached->t() != schedule.ts[l])
        cached = std::make_shared<const ProxOperator>(model, schedule.ts[l], options.image_prox);
      levels.push_back({cached, schedule.taus[l]});
    }
    const std::uint64_t base = ens.iteration;

    // Chains are independent until the next checkpoint; every draw is
    // addressed by (seed, chain, iteration), so the partition is irrelevant.
    std::vector<ChainFailure> failures(workers);
    auto advance = [&](std::size_t w) {
      const std::size_t c0 = n_chains * w / workers;
      const std::size_t c1 = n_chains * (w + 1) / workers;
      std::vector<double> grad(d), p(d), z(d);
      for (std::size_t c = c0; c < c1; ++c) {
        std::span<double> x(ens.states.data() + c * d, d);
        std::uint64_t it = base;
        try {
          for (std::size_t l = 0; l < levels.size(); ++l) {
            for (std::size_t k = 0; k < K; ++k) {
              ++it;
              stream.fill(c, it, z.data(), d);
              if (!ula_update(model, *levels[l].prox, levels[l].tau, x, z, grad, p))
                throw DivergenceError(c, it, l0 + l);
            }
          }
        } catch (...) {
          failures[w] = {c, std::current_exception()};
          return;
        }
      }
    };
    if (workers == 1) {
      advance(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(advance, w);
    }
    const auto first = std::min_element(
        failures.begin(), failures.end(),
        [](const ChainFailure& a, const ChainFailure& b) { return a.chain < b.chain; });
    if (first->error) std::rethrow_exception(first->error);

    ens.iteration = base + static_cast<std::uint64_t>(l1 - l0) * K;
    if (eval_hook) {
      run.metrics.append({ens.iteration, schedule.ts[l1 - 1], schedule.taus[l1 - 1],
                          eval_hook(ens)});
    }
  }
  return run;
}

}  // namespace

std::vector<double> ula_step(const ModelSpec& model, std::span<const double> x,
                             double t, double tau, std::span<const double> z,
                             std::size_t chain) {
  if (x.size() != model.dim()) throw DimensionMismatch("ula_step state", model.dim(), x.size());
  if (z.size() != x.size()) throw DimensionMismatch("ula_step noise", x.size(), z.size());
  if (!(tau > 0.0)) throw InvalidArgument("ula_step: tau must be positive");
  const ProxOperator prox(model, t);
  std::vector<double> out(x.begin(), x.end()), grad(x.size()), p(x.size());
  if (!ula_update(model, prox, tau, out, z, grad, p)) throw DivergenceError(chain, 0, 0);
  return out;
}

ChainEnsemble initialize_chains(const ModelSpec& model, std::size_t n_chains,
                                std::uint64_t seed, const SamplerOptions& options) {
  const std::size_t d = model.dim();
  std::vector<double> center(d, 0.0);
  if (options.init_center.size() == 1) {
    std::fill(center.begin(), center.end(), options.init_center.front());
  } else if (options.init_center.size() == d) {
    center = options.init_center;
  } else if (!options.init_center.empty()) {
    throw DimensionMismatch("initial center", d, options.init_center.size());
  } else if (model.has_data_term()) {
    center = model.y;
  }
  if (!(options.init_scale >= 0.0)) throw InvalidArgument("init_scale must be nonnegative");

  ChainEnsemble ens;
  ens.n_chains = n_chains;
  ens.dim = d;
  ens.rng_seed = seed;
  ens.states.resize(n_chains * d);
  const NormalStream stream(seed);
  for (std::size_t c = 0; c < n_chains; ++c) {
    double* row = ens.states.data() + c * d;
    stream.fill(c, 0, row, d);  // iteration 0 is reserved for initialisation
    for (std::size_t j = 0; j < d; ++j) row[j] = center[j] + options.init_scale * row[j];
  }
  return ens;
}

SamplerRun run_daz(const ModelSpec& model, const AnnealSchedule& schedule,
                   std::size_t n_chains, std::uint64_t seed,
                   const EvalHook& eval_hook, const SamplerOptions& options) {
  return run_levels(model, schedule, n_chains, seed, eval_hook, options);
}

SamplerRun run_myula(const ModelSpec& model, double t_fixed, double tau,
                     std::uint64_t n_iters, std::size_t n_chains,
                     std::uint64_t seed, const EvalHook& eval_hook,
                     const SamplerOptions& options) {
  if (!(t_fixed > 0.0) || !(tau > 0.0))
    throw InvalidArgument("run_myula: t and tau must be positive");
  if (n_iters == 0) {
    model.validate();
    return {initialize_chains(model, n_chains, seed, options), {}};
  }
  return run_levels(model, AnnealSchedule::constant(t_fixed, tau, n_iters), n_chains, seed,
                    eval_hook, options);
}

}  // namespace daz
