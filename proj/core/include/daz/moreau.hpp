#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "daz/model.hpp"
#include "daz/prox.hpp"

namespace daz {

/// Moreau envelope M^t_G(x) = min_y G(y) + |x - y|^2 / (2t) with its spatial
/// gradient (x - p) / t and time derivative -|x - p|^2 / (2 t^2).
struct EnvelopeEval {
  double value = 0.0;
  std::vector<double> grad;
  double dt = 0.0;
  std::vector<double> prox_point;
};

EnvelopeEval envelope(const ModelSpec& model, std::span<const double> x, double t);

/// Fills the envelope fields from an already computed prox point.
EnvelopeEval envelope_from_prox(const ModelSpec& model, std::span<const double> x,
                                double t, std::vector<double> prox_point);

/// dt + |grad|^2 / 2 from the analytic fields. Vanishes up to rounding.
double hj_residual(const ModelSpec& model, std::span<const double> x, double t);

/// Normalised perturbed density pi^t = exp(-F - M^t_G) / Z_t of a 1D model.
/// t = 0 evaluates the target itself.
class PerturbedDensity1D {
 public:
  PerturbedDensity1D(const ModelSpec& model, double t);

  double operator()(double x) const;
  double potential(double x) const;
  double log_normalizer() const noexcept { return log_z_; }
  double t() const noexcept { return t_; }

  /// Integration window and kink locations used for Z_t.
  double window_lo() const noexcept { return lo_; }
  double window_hi() const noexcept { return hi_; }
  std::span<const double> kinks() const noexcept { return kinks_; }

 private:
  ModelSpec model_;
  double t_;
  ScalarPotential g_;
  std::optional<ScalarProx> prox_;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> kinks_;
  double log_z_ = 0.0;
};

std::vector<double> perturbed_density_1d(const ModelSpec& model, double t,
                                         std::span<const double> xs);

/// 1/2 int |pi^t - pi^s| dx for a 1D model, by quadrature.
double perturbed_tv_distance_1d(const ModelSpec& model, double t, double s);

/// Additive convention for the soft-min integral. Lebesgue integrates
/// against dy; GaussianKernel integrates against the N(x, tT) density so that
/// a quadratic potential reproduces the envelope exactly.
enum class SoftMinNormalization { Lebesgue, GaussianKernel };

/// G^t_T(x) = -T log int exp(-(G(y) + |x - y|^2 / (2t)) / T) dy, evaluated
/// in log-sum-exp form around the hard minimum.
double diffusion_potential_1d(const ModelSpec& model, double x, double t, double T,
                              SoftMinNormalization norm = SoftMinNormalization::GaussianKernel);

/// Same for an arbitrary scalar potential; the minimiser of the soft-min
/// integrand is located by a grid scan of [lo, hi].
double diffusion_potential_1d(const std::function<double(double)>& G, double x,
                              double t, double T, double lo, double hi,
                              SoftMinNormalization norm = SoftMinNormalization::GaussianKernel);

}  // namespace daz
