#include "daz/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "daz/errors.hpp"

namespace daz {

namespace {

void check_dim(const ModelSpec& model, std::span<const double> x,
               const char* what) {
  if (x.size() != model.dim()) {
    throw DimensionMismatch(what, model.dim(), x.size());
  }
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Laplace:
      return "laplace";
    case ModelKind::GaussianMixture:
      return "gaussian-mixture";
    case ModelKind::TVChain:
      return "tv-chain";
    case ModelKind::TVImage:
      return "tv-image";
  }
  return "unknown";
}

ModelKind model_kind_from_string(std::string_view name) {
  if (name == "laplace") return ModelKind::Laplace;
  if (name == "gaussian-mixture") return ModelKind::GaussianMixture;
  if (name == "tv-chain") return ModelKind::TVChain;
  if (name == "tv-image") return ModelKind::TVImage;
  throw InvalidArgument("unknown model kind '" + std::string(name) + "'");
}

ModelSpec ModelSpec::laplace(double lambda, std::size_t dim) {
  ModelSpec m;
  m.kind = ModelKind::Laplace;
  m.lambda = lambda;
  m.cols = dim;
  m.validate();
  return m;
}

ModelSpec ModelSpec::gaussian_mixture(std::vector<MixtureComponent> components) {
  ModelSpec m;
  m.kind = ModelKind::GaussianMixture;
  m.components = std::move(components);
  m.sigma = 0.0;
  for (const auto& c : m.components) m.sigma = std::max(m.sigma, c.stddev);
  m.validate();
  return m;
}

ModelSpec ModelSpec::tv_chain(std::vector<double> y, double sigma,
                              double lambda) {
  ModelSpec m;
  m.kind = ModelKind::TVChain;
  m.cols = y.size();
  m.y = std::move(y);
  m.sigma = sigma;
  m.lambda = lambda;
  m.validate();
  return m;
}

ModelSpec ModelSpec::tv_image(std::vector<double> y, std::size_t rows,
                              std::size_t cols, double sigma, double lambda) {
  ModelSpec m;
  m.kind = ModelKind::TVImage;
  m.y = std::move(y);
  m.rows = rows;
  m.cols = cols;
  m.sigma = sigma;
  m.lambda = lambda;
  m.validate();
  return m;
}

void ModelSpec::validate() const {
  if (rows == 0 || cols == 0) throw InvalidArgument("model dimension must be positive");
  switch (kind) {
    case ModelKind::Laplace:
      if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
      break;
    case ModelKind::GaussianMixture: {
      if (dim() != 1) throw InvalidArgument("gaussian mixture is one-dimensional");
      if (components.empty()) throw InvalidArgument("mixture needs at least one component");
      double total = 0.0;
      for (const auto& c : components) {
        if (!(c.weight > 0.0)) throw InvalidArgument("mixture weights must be positive");
        if (!(c.stddev > 0.0)) throw InvalidArgument("mixture stddevs must be positive");
        if (!std::isfinite(c.mean)) throw InvalidArgument("mixture means must be finite");
        total += c.weight;
      }
      if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("mixture weights must sum to 1");
      break;
    }
    case ModelKind::TVChain:
    case ModelKind::TVImage:
      if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be nonnegative");
      if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
      if (kind == ModelKind::TVChain && rows != 1)
        throw InvalidArgument("tv-chain must have a single row");
      if (y.size() != dim()) throw DimensionMismatch("observation y", dim(), y.size());
      for (double v : y)
        if (!std::isfinite(v)) throw InvalidArgument("observation y must be finite");
      break;
  }
}

double lipschitz_F(const ModelSpec& model) {
  return model.has_data_term() ? 1.0 / (model.sigma * model.sigma) : 0.0;
}

double eval_F(const ModelSpec& model, std::span<const double> x) {
  check_dim(model, x, "eval_F");
  if (!model.has_data_term()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - model.y[i];
    acc += r * r;
  }
  return acc / (2.0 * model.sigma * model.sigma);
}

void grad_F_into(const ModelSpec& model, std::span<const double> x,
                 std::span<double> out) {
  check_dim(model, x, "grad_F");
  if (out.size() != x.size()) throw DimensionMismatch("grad_F output", x.size(), out.size());
  if (!model.has_data_term()) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double inv_var = 1.0 / (model.sigma * model.sigma);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - model.y[i]) * inv_var;
}

std::vector<double> grad_F(const ModelSpec& model, std::span<const double> x) {
  std::vector<double> g(x.size());
  grad_F_into(model, x, g);
  return g;
}

double eval_G(const ModelSpec& model, std::span<const double> x) {
  check_dim(model, x, "eval_G");
  switch (model.kind) {
    case ModelKind::Laplace: {
      double acc = 0.0;
      for (double v : x) acc += std::abs(v);
      return model.lambda * acc;
    }
    case ModelKind::GaussianMixture:
      return ScalarPotential(model).value(x[0]);
    case ModelKind::TVChain: {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) acc += std::abs(x[i + 1] - x[i]);
      return model.lambda * acc;
    }
    case ModelKind::TVImage: {
      const std::size_t n = model.rows, m = model.cols;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const double v = x[i * m + j];
          if (i + 1 < n) acc += std::abs(x[(i + 1) * m + j] - v);
          if (j + 1 < m) acc += std::abs(x[i * m + j + 1] - v);
        }
      }
      return model.lambda * acc;
    }
  }
  return 0.0;
}

std::vector<double> subgradient_G(const ModelSpec& model,
                                  std::span<const double> x) {
  check_dim(model, x, "subgradient_G");
  std::vector<double> p(x.size(), 0.0);
  switch (model.kind) {
    case ModelKind::Laplace:
      for (std::size_t i = 0; i < x.size(); ++i) p[i] = model.lambda * sign(x[i]);
      break;
    case ModelKind::GaussianMixture:
      p[0] = ScalarPotential(model).derivative(x[0]);
      break;
    case ModelKind::TVChain:
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double s = model.lambda * sign(x[i + 1] - x[i]);
        p[i + 1] += s;
        p[i] -= s;
      }
      break;
    case ModelKind::TVImage: {
      const std::size_t n = model.rows, m = model.cols;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t k = i * m + j;
          if (i + 1 < n) {
            const double s = model.lambda * sign(x[k + m] - x[k]);
            p[k + m] += s;
            p[k] -= s;
          }
          if (j + 1 < m) {
            const double s = model.lambda * sign(x[k + 1] - x[k]);
            p[k + 1] += s;
            p[k] -= s;
          }
        }
      }
      break;
    }
  }
  return p;
}

double subgradient_bound(const ModelSpec& model, double s) {
  if (s < 0.0) throw InvalidArgument("subgradient_bound: s must be nonnegative");
  const double d = static_cast<double>(model.dim());
  switch (model.kind) {
    case ModelKind::Laplace:
      return model.lambda * std::sqrt(d);
    case ModelKind::TVChain:
      // every coordinate enters at most two difference terms
      return model.lambda * std::sqrt(4.0 * d);
    case ModelKind::TVImage:
      // every pixel enters at most four difference terms
      return model.lambda * std::sqrt(16.0 * d);
    case ModelKind::GaussianMixture: {
      // |G'(y)| = |sum_i r_i (y - mu_i) / sigma_i^2| <= max_i (|y| + |mu_i|) / sigma_i^2
      double bound = 0.0;
      for (const auto& c : model.components)
        bound = std::max(bound, (s + std::abs(c.mean)) / (c.stddev * c.stddev));
      return bound;
    }
  }
  return 0.0;
}

ScalarPotential::ScalarPotential(const ModelSpec& model) : kind_(model.kind) {
  if (!model.is_scalar()) {
    throw InvalidArgument("ScalarPotential requires a one-dimensional Laplace or mixture model");
  }
  if (kind_ == ModelKind::Laplace) {
    lambda_ = model.lambda;
    scale_ = 1.0 / lambda_;
    return;
  }
  center_lo_ = model.components.front().mean;
  center_hi_ = center_lo_;
  scale_ = 0.0;
  for (const auto& c : model.components) {
    means_.push_back(c.mean);
    inv_var_.push_back(1.0 / (c.stddev * c.stddev));
    log_coef_.push_back(std::log(c.weight) - std::log(c.stddev));
    center_lo_ = std::min(center_lo_, c.mean);
    center_hi_ = std::max(center_hi_, c.mean);
    scale_ = std::max(scale_, c.stddev);
  }
}

ScalarPotential::Moments ScalarPotential::mixture_moments(double y) const {
  const std::size_t k = means_.size();
  double amax = -INFINITY;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = y - means_[i];
    amax = std::max(amax, log_coef_[i] - 0.5 * r * r * inv_var_[i]);
  }
  double z = 0.0, s1 = 0.0, s2 = 0.0, c = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = y - means_[i];
    const double e = std::exp(log_coef_[i] - 0.5 * r * r * inv_var_[i] - amax);
    const double slope = r * inv_var_[i];
    z += e;
    s1 += e * slope;
    s2 += e * slope * slope;
    c += e * inv_var_[i];
  }
  return {amax + std::log(z), s1 / z, s2 / z, c / z};
}

double ScalarPotential::value(double y) const {
  if (kind_ == ModelKind::Laplace) return lambda_ * std::abs(y);
  return kHalfLog2Pi - mixture_moments(y).log_norm;
}

double ScalarPotential::derivative(double y) const {
  if (kind_ == ModelKind::Laplace) return lambda_ * sign(y);
  return mixture_moments(y).mean_slope;
}

double ScalarPotential::second_derivative(double y) const {
  if (kind_ == ModelKind::Laplace) return 0.0;
  const Moments m = mixture_moments(y);
  return m.mean_curvature - (m.mean_sq_slope - m.mean_slope * m.mean_slope);
}

double ScalarPotential::density(double y) const {
  if (kind_ == ModelKind::Laplace) return 0.5 * lambda_ * std::exp(-lambda_ * std::abs(y));
  return std::exp(-value(y));
}

double ScalarPotential::support_lo(double k) const { return center_lo_ - k * scale_; }
double ScalarPotential::support_hi(double k) const { return center_hi_ + k * scale_; }

}  // namespace daz
