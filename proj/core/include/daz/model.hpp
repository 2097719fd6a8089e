#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace daz {

enum class ModelKind { Laplace, GaussianMixture, TVChain, TVImage };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

struct MixtureComponent {
  double mean = 0.0;
  double weight = 1.0;
  double stddev = 1.0;
};

/// Target model pi ~ exp(-F - G).
///
/// Laplace and GaussianMixture put the whole potential into G (F = 0).
/// TVChain and TVImage use the data term F = |x - y|^2 / (2 sigma^2) and an
/// anisotropic total-variation G. Images are stored flattened row-major,
/// pixel (i, j) at index i * cols + j.
struct ModelSpec {
  ModelKind kind = ModelKind::Laplace;
  double lambda = 1.0;
  double sigma = 1.0;
  std::vector<double> y;
  std::vector<MixtureComponent> components;
  std::size_t rows = 1;
  std::size_t cols = 1;

  static ModelSpec laplace(double lambda, std::size_t dim = 1);
  static ModelSpec gaussian_mixture(std::vector<MixtureComponent> components);
  static ModelSpec tv_chain(std::vector<double> y, double sigma, double lambda);
  static ModelSpec tv_image(std::vector<double> y, std::size_t rows,
                            std::size_t cols, double sigma, double lambda);

  std::size_t dim() const noexcept { return rows * cols; }
  bool has_data_term() const noexcept {
    return kind == ModelKind::TVChain || kind == ModelKind::TVImage;
  }
  bool is_scalar() const noexcept {
    return (kind == ModelKind::Laplace || kind == ModelKind::GaussianMixture) &&
           dim() == 1;
  }

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

}  // namespace daz
