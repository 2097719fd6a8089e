#pragma once

#include <functional>
#include <span>

namespace daz {

/// Adaptive Gauss-Kronrod integral of f over [a, b], split at the given
/// interior breakpoints (points outside (a, b) are ignored). Throws
/// ConvergenceError when the error estimate exceeds
/// max(rel_tol * |I|, abs_tol).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14,
                 std::span<const double> breakpoints = {});

}  // namespace daz
