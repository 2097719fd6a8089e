#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace daz {

/// Per-coordinate discrete distributions on a shared bin grid.
struct MarginalTable {
  std::vector<double> edges;  // L + 1 increasing values
  std::vector<double> probs;  // d x L, row-major

  std::size_t labels() const noexcept { return edges.empty() ? 0 : edges.size() - 1; }
  std::size_t coordinates() const noexcept {
    return labels() == 0 ? 0 : probs.size() / labels();
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(probs).subspan(i * labels(), labels());
  }
  std::vector<double> midpoints() const;

  /// Rows sum to one within tol and all entries are nonnegative.
  void validate(double tol = 1e-10) const;
};

/// L equal cells on [lo, hi].
std::vector<double> uniform_edges(double lo, double hi, std::size_t cells);

}  // namespace daz
