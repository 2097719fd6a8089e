#include "daz/prox.hpp"

#include <cmath>

#include "daz/errors.hpp"

namespace daz {

double prox_objective(const ModelSpec& model, std::span<const double> x,
                      std::span<const double> p, double t) {
  if (p.size() != x.size()) throw DimensionMismatch("prox_objective", x.size(), p.size());
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - p[i];
    sq += r * r;
  }
  return eval_G(model, p) + sq / (2.0 * t);
}

ProxOperator::ProxOperator(const ModelSpec& model, double t,
                           const ImageProxOptions& image_options)
    : model_(model), t_(t), weight_(t * model.lambda), image_options_(image_options) {
  if (!(t > 0.0)) throw InvalidArgument("prox: t must be positive");
  if (model_.kind == ModelKind::GaussianMixture) scalar_.emplace_back(model_, t_);
}

void ProxOperator::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != model_.dim()) throw DimensionMismatch("prox", model_.dim(), x.size());
  if (out.size() != x.size()) throw DimensionMismatch("prox output", x.size(), out.size());
  switch (model_.kind) {
    case ModelKind::Laplace:
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = prox_abs(x[i], weight_);
      break;
    case ModelKind::GaussianMixture:
      out[0] = scalar_.front().point(x[0]);
      break;
    case ModelKind::TVChain:
      prox_tv_chain(x, weight_, out);
      break;
    case ModelKind::TVImage:
      prox_tv_image(x, model_.rows, model_.cols, weight_, out, image_options_);
      break;
  }
}

ProxResult prox_dispatch(const ModelSpec& model, std::span<const double> x,
                         double t) {
  const ProxOperator op(model, t);
  ProxResult result;
  result.point.resize(x.size());
  op.apply(x, result.point);
  result.objective = prox_objective(model, x, result.point, t);
  return result;
}

}  // namespace daz
