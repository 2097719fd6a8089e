#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "daz/model.hpp"
#include "daz/prox.hpp"
#include "daz/schedule.hpp"

namespace daz {

/// n_chains independent states in R^d, stored row-major (chain c occupies
/// states[c*d, (c+1)*d)).
struct ChainEnsemble {
  std::size_t n_chains = 0;
  std::size_t dim = 0;
  std::vector<double> states;
  std::uint64_t rng_seed = 0;
  std::uint64_t iteration = 0;

  std::span<const double> chain(std::size_t c) const {
    return std::span<const double>(states).subspan(c * dim, dim);
  }
  std::vector<double> coordinate(std::size_t j) const;
  bool all_finite() const noexcept;
};

struct MetricsRecord {
  std::uint64_t iteration = 0;
  double t = 0.0;
  double tau = 0.0;
  double tv_error = 0.0;
};

struct MetricsLog {
  std::vector<MetricsRecord> records;

  /// Rejects non-increasing iterations and tv_error outside [0, 1].
  void append(const MetricsRecord& r);
};

/// Evaluated on a synchronised snapshot at every checkpoint; returns the TV
/// error recorded in the metrics log.
using EvalHook = std::function<double(const ChainEnsemble&)>;

struct SamplerOptions {
  std::size_t workers = 1;
  /// Initial states are center + init_scale * N(0, I). An empty center means
  /// y for data-term models and 0 otherwise; a single value is broadcast.
  std::vector<double> init_center;
  double init_scale = 1.0;
  /// Levels between checkpoints; 0 selects ceil(levels / 200).
  std::size_t checkpoint_every = 0;
  ImageProxOptions image_prox;
};

struct SamplerRun {
  ChainEnsemble ensemble;
  MetricsLog metrics;
};

/// x - tau grad F(x) - (tau / t)(x - prox_{tG}(x)) + sqrt(2 tau) z.
/// Throws DivergenceError (chain index `chain`) on a non-finite result.
std::vector<double> ula_step(const ModelSpec& model, std::span<const double> x,
                             double t, double tau, std::span<const double> z,
                             std::size_t chain = 0);

ChainEnsemble initialize_chains(const ModelSpec& model, std::size_t n_chains,
                                std::uint64_t seed, const SamplerOptions& options);

/// Annealed Langevin over the schedule: K ULA steps per level, the final
/// state of a level starts the next one.
SamplerRun run_daz(const ModelSpec& model, const AnnealSchedule& schedule,
                   std::size_t n_chains, std::uint64_t seed,
                   const EvalHook& eval_hook = {},
                   const SamplerOptions& options = {});

/// n_iters ULA steps on the envelope with fixed parameter t_fixed.
SamplerRun run_myula(const ModelSpec& model, double t_fixed, double tau,
                     std::uint64_t n_iters, std::size_t n_chains,
                     std::uint64_t seed, const EvalHook& eval_hook = {},
                     const SamplerOptions& options = {});

}  // namespace daz
