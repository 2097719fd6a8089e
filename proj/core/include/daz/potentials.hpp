#pragma once

#include <span>
#include <vector>

#include "daz/model.hpp"

namespace daz {

double eval_F(const ModelSpec& model, std::span<const double> x);
std::vector<double> grad_F(const ModelSpec& model, std::span<const double> x);
/// out <- grad F(x); out may not alias x.
void grad_F_into(const ModelSpec& model, std::span<const double> x,
                 std::span<double> out);

/// Gradient-Lipschitz constant of F: 1/sigma^2 with a data term, else 0.
double lipschitz_F(const ModelSpec& model);

double eval_G(const ModelSpec& model, std::span<const double> x);

/// One element of the regular subdifferential of G at x. At kinks of the
/// absolute value the zero subgradient is chosen.
std::vector<double> subgradient_G(const ModelSpec& model,
                                  std::span<const double> x);

/// Upper bound on sup{ |p| : |x| <= s, p in dG(x) }.
double subgradient_bound(const ModelSpec& model, double s);

/// Scalar potential G for the 1D models with its first two derivatives.
/// The Laplace derivative is the subgradient choice lambda * sign(y) and the
/// second derivative is taken as 0 away from the kink.
class ScalarPotential {
 public:
  explicit ScalarPotential(const ModelSpec& model);

  double value(double y) const;
  double derivative(double y) const;
  double second_derivative(double y) const;

  /// Density exp(-G(y)) normalised analytically.
  double density(double y) const;

  /// Interval outside of which the potential is convex and increasing away
  /// from the modes: [lo, hi] = [min mean - k s, max mean + k s].
  double support_lo(double k) const;
  double support_hi(double k) const;

  /// Smallest and largest mean and largest scale of the potential.
  double center_lo() const { return center_lo_; }
  double center_hi() const { return center_hi_; }
  double scale() const { return scale_; }

 private:
  ModelKind kind_;
  double lambda_ = 1.0;
  std::vector<double> means_;
  std::vector<double> inv_var_;
  std::vector<double> log_coef_;  // log(w_i / sigma_i)
  double center_lo_ = 0.0;
  double center_hi_ = 0.0;
  double scale_ = 1.0;

  struct Moments {
    double log_norm;  // log sum_i w_i N(y; mu_i, sigma_i), without 1/sqrt(2 pi)
    double mean_slope;
    double mean_sq_slope;
    double mean_curvature;
  };
  Moments mixture_moments(double y) const;
};

}  // namespace daz
