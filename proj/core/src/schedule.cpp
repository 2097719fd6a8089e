#include "daz/schedule.hpp"

#include <cmath>

#include "daz/errors.hpp"
#include "daz/potentials.hpp"

namespace daz {

void AnnealSchedule::validate() const {
  if (ts.empty()) throw InvalidArgument("schedule: no levels");
  if (taus.size() != ts.size()) throw DimensionMismatch("schedule step sizes", ts.size(), taus.size());
  if (inner_steps == 0) throw InvalidArgument("schedule: inner steps must be positive");
  for (std::size_t n = 0; n < ts.size(); ++n) {
    if (!(ts[n] > 0.0) || !std::isfinite(ts[n]))
      throw InvalidArgument("schedule: Moreau parameters must be positive");
    if (!(taus[n] > 0.0) || !std::isfinite(taus[n]))
      throw InvalidArgument("schedule: step sizes must be positive");
    if (n > 0 && ts[n] > ts[n - 1])
      throw InvalidArgument("schedule: Moreau parameters must not increase");
  }
}

bool AnnealSchedule::strictly_decreasing() const noexcept {
  for (std::size_t n = 1; n < ts.size(); ++n)
    if (!(ts[n] < ts[n - 1])) return false;
  return true;
}

AnnealSchedule AnnealSchedule::constant(double t, double tau, std::size_t levels,
                                        std::size_t inner_steps) {
  AnnealSchedule s{std::vector<double>(levels, t), std::vector<double>(levels, tau), inner_steps};
  s.validate();
  return s;
}

double step_size_rule(double t, const ModelSpec& model, double c) {
  if (!(t > 0.0)) throw InvalidArgument("step_size_rule: t must be positive");
  if (!(c > 0.0 && c < 2.0)) throw InvalidArgument("step_size_rule: c must lie in (0, 2)");
  return c * t / (1.0 + lipschitz_F(model) * t);
}

AnnealSchedule make_schedule(double t_min, double t_max, std::size_t levels,
                             const ModelSpec& model, double c, std::size_t inner_steps) {
  if (levels == 0) throw InvalidArgument("make_schedule: at least one level required");
  if (!(t_min > 0.0)) throw InvalidArgument("make_schedule: t_min must be positive");
  if (levels > 1 && !(t_max > t_min))
    throw InvalidArgument("make_schedule: need 0 < t_min < t_max");

  AnnealSchedule s;
  s.inner_steps = inner_steps;
  if (levels == 1) {
    s.ts = {t_min};
  } else {
    const double a = std::log(t_max), b = std::log(t_min);
    const double step = (b - a) / static_cast<double>(levels - 1);
    s.ts.resize(levels);
    for (std::size_t n = 0; n < levels; ++n) s.ts[n] = std::exp(a + step * static_cast<double>(n));
    s.ts.front() = t_max;
    s.ts.back() = t_min;
  }
  s.taus.reserve(levels);
  for (double t : s.ts) s.taus.push_back(step_size_rule(t, model, c));
  s.validate();
  return s;
}

}  // namespace daz
