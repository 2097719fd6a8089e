#include <algorithm>
#include <cmath>
#include <cstddef>

#include "daz/errors.hpp"
#include "daz/prox.hpp"

namespace daz {

// Direct 1D TV denoising: L. Condat, "A Direct Algorithm for 1D Total
// Variation Denoising", IEEE SPL 2013. The running segment keeps lower and
// upper bounds [vmin, vmax] on its value together with the partial dual sums
// umin / umax; a segment is closed as soon as one of the dual sums leaves
// [-w, w].
void prox_tv_chain(std::span<const double> v, double w, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  if (n == 0) throw InvalidArgument("prox_tv_chain: empty input");
  if (!(w >= 0.0)) throw InvalidArgument("prox_tv_chain: weight must be nonnegative");
  if (out.size() != v.size()) throw DimensionMismatch("prox_tv_chain output", v.size(), out.size());

  std::ptrdiff_t k = 0, k0 = 0;
  std::ptrdiff_t kplus = 0, kminus = 0;
  double umin = w, umax = -w;
  double vmin = v[0] - w, vmax = v[0] + w;
  const double twow = 2.0 * w;

  for (;;) {
    while (k == n - 1) {
      if (umin < 0.0) {
        // segment value too high: negative jump
        do out[k0++] = vmin; while (k0 <= kminus);
        k = kminus = k0;
        vmin = v[k0];
        umin = w;
        umax = vmin + umin - vmax;
      } else if (umax > 0.0) {
        // segment value too low: positive jump
        do out[k0++] = vmax; while (k0 <= kplus);
        k = kplus = k0;
        vmax = v[k0];
        umax = -w;
        umin = vmax + umax - vmin;
      } else {
        vmin += umin / static_cast<double>(k - k0 + 1);
        do out[k0++] = vmin; while (k0 <= k);
        return;
      }
    }
    umin += v[k + 1] - vmin;
    if (umin < -w) {
      do out[k0++] = vmin; while (k0 <= kminus);
      k = kminus = kplus = k0;
      vmin = v[k0];
      vmax = vmin + twow;
      umin = w;
      umax = -w;
      continue;
    }
    umax += v[k + 1] - vmax;
    if (umax > w) {
      do out[k0++] = vmax; while (k0 <= kplus);
      k = kminus = kplus = k0;
      vmax = v[k0];
      vmin = vmax - twow;
      umin = w;
      umax = -w;
      continue;
    }
    ++k;
    if (umin >= w) {
      kminus = k;
      vmin += (umin - w) / static_cast<double>(kminus - k0 + 1);
      umin = w;
    }
    if (umax <= -w) {
      kplus = k;
      vmax += (umax + w) / static_cast<double>(kplus - k0 + 1);
      umax = -w;
    }
  }
}

std::vector<double> prox_tv_chain(std::span<const double> v, double w) {
  std::vector<double> out(v.size());
  prox_tv_chain(v, w, out);
  return out;
}

namespace {

void prox_rows(std::span<const double> in, std::size_t rows, std::size_t cols,
               double w, std::span<double> out) {
  for (std::size_t i = 0; i < rows; ++i) {
    prox_tv_chain(in.subspan(i * cols, cols), w, out.subspan(i * cols, cols));
  }
}

void prox_cols(std::span<const double> in, std::size_t rows, std::size_t cols,
               double w, std::span<double> out, std::vector<double>& col_in,
               std::vector<double>& col_out) {
  col_in.resize(rows);
  col_out.resize(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) col_in[i] = in[i * cols + j];
    prox_tv_chain(col_in, w, col_out);
    for (std::size_t i = 0; i < rows; ++i) out[i * cols + j] = col_out[i];
  }
}

}  // namespace

ImageProxStats prox_tv_image(std::span<const double> v, std::size_t rows,
                             std::size_t cols, double w, std::span<double> out,
                             const ImageProxOptions& options) {
  const std::size_t n = rows * cols;
  if (n == 0) throw InvalidArgument("prox_tv_image: empty image");
  if (v.size() != n) throw DimensionMismatch("prox_tv_image input", n, v.size());
  if (out.size() != n) throw DimensionMismatch("prox_tv_image output", n, out.size());
  if (!(w >= 0.0)) throw InvalidArgument("prox_tv_image: weight must be nonnegative");
  if (!(options.tol > 0.0)) throw InvalidArgument("prox_tv_image: tol must be positive");

  ImageProxStats stats;
  if (rows == 1 || cols == 1) {
    prox_tv_chain(v, w, out);
    return stats;
  }

  // Accelerated block descent on the dual: with p the column-block dual
  // variable, u = prox_rows(v - p) and p+ = z - prox_cols(z), z = p + u, is a
  // proximal gradient step of unit length. Momentum with gradient restart.
  std::vector<double> p(n, 0.0), p_next(n), q(n, 0.0), u(n), z(n), prev(v.begin(), v.end());
  std::vector<double> col_in, col_out;
  double momentum = 1.0;

  for (std::size_t sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    for (std::size_t k = 0; k < n; ++k) z[k] = v[k] - q[k];
    prox_rows(z, rows, cols, w, u);
    for (std::size_t k = 0; k < n; ++k) z[k] = q[k] + u[k];
    prox_cols(z, rows, cols, w, out, col_in, col_out);

    double change = 0.0, split = 0.0, restart = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      p_next[k] = z[k] - out[k];
      restart += (q[k] - p_next[k]) * (p_next[k] - p[k]);
      change = std::max(change, std::abs(out[k] - prev[k]));
      split = std::max(split, std::abs(out[k] - u[k]));
      prev[k] = out[k];
    }
    stats.sweeps = sweep;
    stats.residual = std::max(change, split);
    if (stats.residual <= options.tol) return stats;

    if (restart > 0.0) momentum = 1.0;
    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = (momentum - 1.0) / next_momentum;
    momentum = next_momentum;
    for (std::size_t k = 0; k < n; ++k) {
      q[k] = p_next[k] + beta * (p_next[k] - p[k]);
      p[k] = p_next[k];
    }
  }
  throw ConvergenceError("prox_tv_image did not converge", stats.residual, stats.sweeps);
}

std::vector<double> prox_tv_image(std::span<const double> v, std::size_t rows,
                                  std::size_t cols, double w, double tol) {
  std::vector<double> out(v.size());
  prox_tv_image(v, rows, cols, w, out, ImageProxOptions{tol, 500});
  return out;
}

}  // namespace daz
