#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "daz/model.hpp"
#include "daz/potentials.hpp"

namespace daz {

/// Minimiser p of G(p) + |x - p|^2 / (2t) together with that objective value.
struct ProxResult {
  std::vector<double> point;
  double objective = 0.0;
};

/// Soft thresholding, the prox of w|.| .
inline double prox_abs(double x, double w) {
  if (x > w) return x - w;
  if (x < -w) return x + w;
  return 0.0;
}

/// Exact minimiser of 1/2 |u - v|^2 + w sum_i |u_{i+1} - u_i| by the direct
/// (taut-string equivalent) algorithm of Condat. Linear time in practice.
void prox_tv_chain(std::span<const double> v, double w, std::span<double> out);
std::vector<double> prox_tv_chain(std::span<const double> v, double w);

struct ImageProxOptions {
  double tol = 1e-8;
  std::size_t max_sweeps = 500;
};

struct ImageProxStats {
  std::size_t sweeps = 0;
  double residual = 0.0;
};

/// Minimiser of 1/2 |u - v|_F^2 + w TV_aniso(u) for a row-major rows x cols
/// image. Accelerated alternating minimisation of the dual over the
/// row-chain and column-chain blocks, each solved exactly by prox_tv_chain.
/// Stops when both the change between sweeps and the disagreement of the two
/// blocks are below tol in max-norm; throws ConvergenceError after max_sweeps.
ImageProxStats prox_tv_image(std::span<const double> v, std::size_t rows,
                             std::size_t cols, double w, std::span<double> out,
                             const ImageProxOptions& options = {});
std::vector<double> prox_tv_image(std::span<const double> v, std::size_t rows,
                                  std::size_t cols, double w, double tol);

/// Global prox of a scalar (possibly non-convex) potential for a fixed t.
///
/// Stationary points solve h(y) = y + t G'(y) = x. The constructor scans
/// h' = 1 + t G'' on a grid over [min mean - 12 s, max mean + 12 s] and
/// splits the line into pieces on which h is monotone. solve(x) finds the
/// root on every increasing piece by safeguarded Newton and returns the one
/// with the smallest objective; near-ties go to the smaller coordinate.
class ScalarProx {
 public:
  static constexpr std::size_t kDefaultScanPoints = 4096;

  ScalarProx(const ModelSpec& model, double t,
             std::size_t scan_points = kDefaultScanPoints);

  double point(double x) const;
  ProxResult solve(double x) const;
  double objective(double x, double y) const;

  /// Local minimisers of the prox objective at x, ascending.
  std::vector<double> local_minimizers(double x) const;

  double t() const noexcept { return t_; }
  const ScalarPotential& potential() const noexcept { return g_; }
  /// Points where h' changes sign; empty when h is monotone.
  std::span<const double> breaks() const noexcept { return breaks_; }

  /// h(y) - x.
  double stationarity(double y, double x) const;

 private:
  ScalarPotential g_;
  double t_;
  std::vector<double> breaks_;
  std::vector<char> increasing_;
  double root_on_piece(double x, double lo, double hi) const;
};

/// prox_{tG}(x) for a 1D model; t <= 0 throws.
ProxResult prox_numeric_1d(const ModelSpec& model, double x, double t);

/// G(p) + |x - p|^2 / (2t).
double prox_objective(const ModelSpec& model, std::span<const double> x,
                      std::span<const double> p, double t);

/// prox_{tG} for a fixed model and t, reusable across many points. Holds a
/// copy of the model; apply() is const and safe to call concurrently.
class ProxOperator {
 public:
  ProxOperator(const ModelSpec& model, double t,
               const ImageProxOptions& image_options = {});

  void apply(std::span<const double> x, std::span<double> out) const;
  double t() const noexcept { return t_; }
  const ModelSpec& model() const noexcept { return model_; }

 private:
  ModelSpec model_;
  double t_;
  double weight_;
  ImageProxOptions image_options_;
  std::vector<ScalarProx> scalar_;  // empty unless the model is a mixture
};

ProxResult prox_dispatch(const ModelSpec& model, std::span<const double> x,
                         double t);

/// Result of scanning t for the first value where the scalar prox stops
/// being single valued.
struct UniquenessScan {
  bool found = false;
  double t = 0.0;       // first grid value with a tie
  double x = 0.0;       // a point with two global minimisers at that t
  double gap = 0.0;     // objective difference of the two minimisers
};

/// Scans t over a geometric grid in [t_lo, t_hi]; for each t looks for an x
/// whose two best local minimisers have objectives within 1e-6.
UniquenessScan detect_uniqueness_threshold(const ModelSpec& model, double t_lo,
                                           double t_hi, std::size_t n_t = 200);

}  // namespace daz
