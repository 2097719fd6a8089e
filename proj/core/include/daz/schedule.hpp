#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "daz/model.hpp"

namespace daz {

/// Moreau parameters t_N > ... > t_1 with paired ULA step sizes and the
/// number of inner ULA steps per level. Levels run in storage order, so
/// ts.front() is the largest parameter.
struct AnnealSchedule {
  std::vector<double> ts;
  std::vector<double> taus;
  std::size_t inner_steps = 1;

  std::size_t levels() const noexcept { return ts.size(); }
  std::uint64_t total_iterations() const noexcept {
    return static_cast<std::uint64_t>(ts.size()) * inner_steps;
  }

  /// Positive, equally long, non-increasing ts; positive taus; K >= 1.
  void validate() const;
  bool strictly_decreasing() const noexcept;

  /// Every level at the same (t, tau): the MYULA reduction.
  static AnnealSchedule constant(double t, double tau, std::size_t levels,
                                 std::size_t inner_steps = 1);
};

/// tau = c / (L_F + 1/t). With F = 0 this is c * t.
double step_size_rule(double t, const ModelSpec& model, double c);

/// Geometric (log-spaced) parameters from t_max down to t_min, endpoints
/// included. A single level uses t_min.
AnnealSchedule make_schedule(double t_min, double t_max, std::size_t levels,
                             const ModelSpec& model, double c,
                             std::size_t inner_steps = 1);

}  // namespace daz
