#include "daz/moreau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "daz/errors.hpp"
#include "daz/potentials.hpp"
#include "daz/quadrature.hpp"

namespace daz {

EnvelopeEval envelope_from_prox(const ModelSpec& model, std::span<const double> x,
                                double t, std::vector<double> prox_point) {
  if (!(t > 0.0)) throw InvalidArgument("envelope: t must be positive");
  EnvelopeEval e;
  e.grad.resize(x.size());
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - prox_point[i];
    e.grad[i] = r / t;
    sq += r * r;
  }
  e.value = eval_G(model, prox_point) + sq / (2.0 * t);
  e.dt = -sq / (2.0 * t * t);
  e.prox_point = std::move(prox_point);
  return e;
}

EnvelopeEval envelope(const ModelSpec& model, std::span<const double> x, double t) {
  ProxResult p = prox_dispatch(model, x, t);
  return envelope_from_prox(model, x, t, std::move(p.point));
}

double hj_residual(const ModelSpec& model, std::span<const double> x, double t) {
  const EnvelopeEval e = envelope(model, x, t);
  double sq = 0.0;
  for (double g : e.grad) sq += g * g;
  return e.dt + 0.5 * sq;
}

PerturbedDensity1D::PerturbedDensity1D(const ModelSpec& model, double t)
    : model_(model), t_(t), g_(model) {
  if (!(t >= 0.0)) throw InvalidArgument("perturbed density: t must be nonnegative");
  if (t > 0.0) prox_.emplace(model_, t_);

  const ScalarPotential& g = g_;
  if (model_.kind == ModelKind::Laplace) {
    // exponential tails need a wider window than Gaussian ones
    const double half = t_ * model_.lambda + 40.0 / model_.lambda;
    lo_ = -half;
    hi_ = half;
    kinks_ = {0.0};
    if (t_ > 0.0) {
      kinks_.push_back(-t_ * model_.lambda);
      kinks_.push_back(t_ * model_.lambda);
    }
  } else {
    const double scale = std::sqrt(g.scale() * g.scale() + t_);
    lo_ = g.center_lo() - 12.0 * scale;
    hi_ = g.center_hi() + 12.0 * scale;
    for (const auto& c : model_.components) kinks_.push_back(c.mean);
  }
  std::sort(kinks_.begin(), kinks_.end());

  double shift = INFINITY;
  for (double k : kinks_) shift = std::min(shift, potential(k));
  const double z = integrate([&](double x) { return std::exp(-(potential(x) - shift)); },
                             lo_, hi_, 1e-10, 1e-300, kinks_);
  log_z_ = std::log(z) - shift;
}

double PerturbedDensity1D::potential(double x) const {
  if (!prox_) return g_.value(x);
  return prox_->objective(x, prox_->point(x));
}

double PerturbedDensity1D::operator()(double x) const {
  return std::exp(-potential(x) - log_z_);
}

std::vector<double> perturbed_density_1d(const ModelSpec& model, double t,
                                         std::span<const double> xs) {
  const PerturbedDensity1D density(model, t);
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [&](double x) { return density(x); });
  return out;
}

double perturbed_tv_distance_1d(const ModelSpec& model, double t, double s) {
  const PerturbedDensity1D p(model, t), q(model, s);
  std::vector<double> kinks(p.kinks().begin(), p.kinks().end());
  kinks.insert(kinks.end(), q.kinks().begin(), q.kinks().end());
  const double lo = std::min(p.window_lo(), q.window_lo());
  const double hi = std::max(p.window_hi(), q.window_hi());
  return 0.5 * integrate([&](double x) { return std::abs(p(x) - q(x)); }, lo, hi,
                         1e-8, 1e-13, kinks);
}

namespace {

double soft_min(const std::function<double(double)>& f, double fmin,
                double argmin, double t, double T, double lo, double hi,
                std::vector<double> breaks, SoftMinNormalization norm) {
  if (!(t > 0.0) || !(T > 0.0))
    throw InvalidArgument("diffusion potential: t and T must be positive");
  breaks.push_back(argmin);
  // the integrand is concentrated within a few sqrt(tT) of the minimiser
  const double w = std::sqrt(t * T);
  for (double k : {-8.0, -3.0, -1.0, 1.0, 3.0, 8.0}) breaks.push_back(argmin + k * w);
  const double integral = integrate(
      [&](double y) { return std::exp(-(f(y) - fmin) / T); }, lo, hi, 1e-10, 1e-300, breaks);
  double log_mass = std::log(integral);
  if (norm == SoftMinNormalization::GaussianKernel)
    log_mass -= 0.5 * std::log(2.0 * std::numbers::pi * t * T);
  return fmin - T * log_mass;
}

}  // namespace

double diffusion_potential_1d(const ModelSpec& model, double x, double t, double T,
                              SoftMinNormalization norm) {
  if (!model.is_scalar())
    throw InvalidArgument("diffusion potential requires a one-dimensional model");
  if (!(t > 0.0) || !(T > 0.0))
    throw InvalidArgument("diffusion potential: t and T must be positive");
  const ScalarProx prox(model, t);
  const double p = prox.point(x);
  const double fmin = prox.objective(x, p);
  const ScalarPotential& g = prox.potential();
  const double half = 12.0 * (std::sqrt(t * T) + g.scale()) +
                      (model.kind == ModelKind::Laplace ? 40.0 * T / model.lambda : 0.0);
  const double lo = std::min({p, x, g.center_lo()}) - half;
  const double hi = std::max({p, x, g.center_hi()}) + half;
  std::vector<double> breaks;
  if (model.kind == ModelKind::Laplace) breaks.push_back(0.0);
  for (const auto& c : model.components) breaks.push_back(c.mean);
  return soft_min([&](double y) { return prox.objective(x, y); }, fmin, p, t, T, lo, hi,
                  std::move(breaks), norm);
}

double diffusion_potential_1d(const std::function<double(double)>& G, double x,
                              double t, double T, double lo, double hi,
                              SoftMinNormalization norm) {
  if (!(hi > lo)) throw InvalidArgument("diffusion potential: empty window");
  const auto f = [&](double y) {
    const double r = x - y;
    return G(y) + r * r / (2.0 * t);
  };
  constexpr int kScan = 4096;
  const double h = (hi - lo) / (kScan - 1);
  int best = 0;
  double best_f = f(lo);
  for (int k = 1; k < kScan; ++k) {
    const double v = f(lo + h * k);
    if (v < best_f) {
      best_f = v;
      best = k;
    }
  }
  // golden-section refinement around the best grid point
  double a = lo + h * std::max(best - 1, 0), b = lo + h * std::min(best + 1, kScan - 1);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double argmin = 0.5 * (a + b);
  const double fmin = std::min(best_f, f(argmin));
  return soft_min(f, fmin, argmin, t, T, lo, hi, {}, norm);
}

}  // namespace daz
