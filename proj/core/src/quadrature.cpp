#include "daz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "daz/errors.hpp"

namespace daz {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol,
                 std::span<const double> breakpoints) {
  if (!(b > a)) throw InvalidArgument("integrate: empty interval");
  // slivers between nearly coincident breakpoints confuse the error estimate
  const double min_gap = 1e-9 * (b - a);
  std::vector<double> inner;
  for (double p : breakpoints)
    if (p > a + min_gap && p < b - min_gap) inner.push_back(p);
  std::sort(inner.begin(), inner.end());
  std::vector<double> nodes{a};
  for (double p : inner)
    if (p - nodes.back() > min_gap) nodes.push_back(p);
  nodes.push_back(b);

  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0.0, total_err = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    double err = 0.0;
    total += Rule::integrate(f, nodes[k], nodes[k + 1], 25, rel_tol * 0.1, &err);
    total_err += err;
  }
  if (!std::isfinite(total) || total_err > std::max(rel_tol * std::abs(total), abs_tol)) {
    throw ConvergenceError("adaptive quadrature did not reach tolerance", total_err, nodes.size() - 1);
  }
  return total;
}

}  // namespace daz
