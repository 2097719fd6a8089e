#include <algorithm>
#include <cmath>
#include <limits>

#include "daz/errors.hpp"
#include "daz/prox.hpp"

namespace daz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScanHalfWidth = 12.0;  // in units of the largest scale
constexpr int kMaxRootIterations = 300;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool nearly_equal_objective(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

ScalarProx::ScalarProx(const ModelSpec& model, double t, std::size_t scan_points)
    : g_(model), t_(t) {
  if (!(t > 0.0)) throw InvalidArgument("scalar prox: t must be positive");
  if (scan_points < 2048) throw InvalidArgument("scalar prox: at least 2048 scan points required");

  if (model.kind == ModelKind::Laplace) {
    increasing_.push_back(1);
    return;
  }

  const double lo = g_.support_lo(kScanHalfWidth);
  const double hi = g_.support_hi(kScanHalfWidth);
  const double step = (hi - lo) / static_cast<double>(scan_points - 1);
  auto slope = [&](double y) { return 1.0 + t_ * g_.second_derivative(y); };

  double prev_y = lo;
  bool prev_up = slope(lo) >= 0.0;
  increasing_.push_back(prev_up ? 1 : 0);
  for (std::size_t k = 1; k < scan_points; ++k) {
    const double y = lo + step * static_cast<double>(k);
    const bool up = slope(y) >= 0.0;
    if (up != prev_up) {
      double a = prev_y, b = y;
      for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        ((slope(m) >= 0.0) == prev_up ? a : b) = m;
      }
      breaks_.push_back(0.5 * (a + b));
      increasing_.push_back(up ? 1 : 0);
    }
    prev_y = y;
    prev_up = up;
  }
}

double ScalarProx::stationarity(double y, double x) const {
  return y + t_ * g_.derivative(y) - x;
}

double ScalarProx::objective(double x, double y) const {
  const double r = x - y;
  return g_.value(y) + r * r / (2.0 * t_);
}

// Root of the stationarity map on a piece where it is nondecreasing; NaN when
// x is outside the range of the map on that piece.
double ScalarProx::root_on_piece(double x, double lo, double hi) const {
  const double scale = g_.scale();
  const bool lo_is_break = std::isfinite(lo), hi_is_break = std::isfinite(hi);
  if (std::isfinite(lo)) {
    if (stationarity(lo, x) > 0.0) return std::numeric_limits<double>::quiet_NaN();
  } else {
    double step = scale;
    lo = (std::isfinite(hi) ? std::min(hi, x) : x) - step;
    while (stationarity(lo, x) > 0.0) {
      step *= 2.0;
      lo -= step;
    }
  }
  if (std::isfinite(hi)) {
    if (stationarity(hi, x) < 0.0) return std::numeric_limits<double>::quiet_NaN();
  } else {
    double step = scale;
    hi = std::max(lo, x) + step;
    while (stationarity(hi, x) < 0.0) {
      step *= 2.0;
      hi += step;
    }
  }

  // Safeguarded Newton on g(y) = y + t G'(y) - x with bracket [lo, hi]. The
  // map flattens towards a break, so start from the other end of the piece.
  double y;
  if (lo_is_break && hi_is_break) {
    y = 0.5 * (lo + hi);
  } else if (lo_is_break) {
    y = hi;
  } else if (hi_is_break) {
    y = lo;
  } else {
    y = std::clamp(x, lo, hi);
  }
  for (int it = 0; it < kMaxRootIterations; ++it) {
    const double tg = t_ * g_.derivative(y);
    const double g = y + tg - x;
    // residual below the rounding noise of its own terms
    if (std::abs(g) <= 8.0 * kEps * (std::abs(y) + std::abs(tg) + std::abs(x))) return y;
    (g < 0.0 ? lo : hi) = y;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(y))) break;
    const double dg = 1.0 + t_ * g_.second_derivative(y);
    if (dg > 0.0) {
      const double next = y - g / dg;
      if (std::abs(next - y) <= 1e-15 * std::max(1.0, std::abs(y))) return next;
      if (next > lo && next < hi) {
        y = next;
        continue;
      }
    }
    y = 0.5 * (lo + hi);
  }
  return y;
}

std::vector<double> ScalarProx::local_minimizers(double x) const {
  std::vector<double> roots;
  for (std::size_t piece = 0; piece < increasing_.size(); ++piece) {
    if (!increasing_[piece]) continue;
    const double lo = piece == 0 ? -kInf : breaks_[piece - 1];
    const double hi = piece == breaks_.size() ? kInf : breaks_[piece];
    const double r = root_on_piece(x, lo, hi);
    if (!std::isnan(r)) roots.push_back(r);
  }
  return roots;
}

double ScalarProx::point(double x) const {
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_obj = kInf;
  for (std::size_t piece = 0; piece < increasing_.size(); ++piece) {
    if (!increasing_[piece]) continue;
    const double lo = piece == 0 ? -kInf : breaks_[piece - 1];
    const double hi = piece == breaks_.size() ? kInf : breaks_[piece];
    const double r = root_on_piece(x, lo, hi);
    if (std::isnan(r)) continue;
    const double obj = objective(x, r);
    // pieces are visited left to right, so a tie keeps the smaller coordinate
    if (std::isnan(best) || (obj < best_obj && !nearly_equal_objective(obj, best_obj))) {
      best = r;
      best_obj = obj;
    }
  }
  return best;
}

ProxResult ScalarProx::solve(double x) const {
  const double p = point(x);
  return {{p}, objective(x, p)};
}

ProxResult prox_numeric_1d(const ModelSpec& model, double x, double t) {
  if (!(t > 0.0)) throw InvalidArgument("prox_numeric_1d: t must be positive");
  return ScalarProx(model, t).solve(x);
}

UniquenessScan detect_uniqueness_threshold(const ModelSpec& model, double t_lo,
                                           double t_hi, std::size_t n_t) {
  if (!(t_lo > 0.0 && t_hi > t_lo) || n_t < 2)
    throw InvalidArgument("detect_uniqueness_threshold: invalid t range");
  UniquenessScan result;
  const double ratio = std::log(t_hi / t_lo) / static_cast<double>(n_t - 1);
  for (std::size_t k = 0; k < n_t; ++k) {
    const double t = t_lo * std::exp(ratio * static_cast<double>(k));
    const ScalarProx prox(model, t);
    if (prox.breaks().empty()) continue;  // stationarity map monotone: unique

    // x-range on which several local minimisers coexist: between the values
    // of the stationarity map at consecutive breaks.
    const auto& breaks = prox.breaks();
    const auto h = [&](double y) { return prox.stationarity(y, 0.0); };
    double a = std::numeric_limits<double>::infinity(), b = -a;
    for (double br : breaks) {
      a = std::min(a, h(br));
      b = std::max(b, h(br));
    }
    // gap(x) = objective of leftmost minimiser - objective of rightmost one
    const auto gap = [&](double x) {
      const auto mins = prox.local_minimizers(x);
      if (mins.size() < 2) return std::numeric_limits<double>::quiet_NaN();
      return prox.objective(x, mins.front()) - prox.objective(x, mins.back());
    };
    const double lo_x = std::min(a, b), hi_x = std::max(a, b);
    double ga = gap(lo_x + 1e-12 * (hi_x - lo_x));
    double gb = gap(hi_x - 1e-12 * (hi_x - lo_x));
    if (std::isnan(ga) || std::isnan(gb) || ga * gb > 0.0) continue;
    double xa = lo_x, xb = hi_x;
    for (int it = 0; it < 200; ++it) {
      const double xm = 0.5 * (xa + xb);
      const double gm = gap(xm);
      if (std::isnan(gm)) break;
      if ((gm < 0.0) == (ga < 0.0)) {
        xa = xm;
        ga = gm;
      } else {
        xb = xm;
      }
    }
    const double x_tie = 0.5 * (xa + xb);
    const double g_tie = gap(x_tie);
    if (!std::isnan(g_tie) && std::abs(g_tie) <= 1e-6) {
      result = {true, t, x_tie, g_tie};
      return result;
    }
  }
  return result;
}

}  // namespace daz
