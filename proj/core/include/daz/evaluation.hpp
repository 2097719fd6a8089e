#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <span>
#include <vector>

#include "daz/marginal_table.hpp"
#include "daz/samplers.hpp"

namespace daz {

/// Equal-width histogram on [lo, hi]. Samples outside the range are clipped
/// into the end bins and counted in `clipped`, so sum(counts) == n.
struct Histogram1D {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;
  std::uint64_t clipped = 0;

  std::size_t bins() const noexcept { return counts.size(); }
  double bin_left(std::size_t b) const noexcept;
  double bin_right(std::size_t b) const noexcept;
  std::vector<double> frequencies() const;
};

Histogram1D make_histogram(std::span<const double> samples, double lo, double hi,
                           std::size_t bins);

/// Probability mass of each bin under a normalised density. The end bins
/// also receive the tail mass beyond lo / hi, matching the clipping rule.
std::vector<double> reference_masses(const std::function<double(double)>& density,
                                     double lo, double hi, std::size_t bins,
                                     std::span<const double> kinks = {});

/// 1/2 sum |p_b - q_b|.
double tv_between_masses(std::span<const double> p, std::span<const double> q);

double tv_distance(const Histogram1D& hist, std::span<const double> masses);

/// Empirical TV distance between samples and a density, 1/2 int |p - q|, at
/// the resolution of `bins` equal cells on [lo, hi].
double tv_distance_1d(std::span<const double> samples,
                      const std::function<double(double)>& density, double lo,
                      double hi, std::size_t bins);

/// Mean over coordinates of the TV distance between the empirical histogram
/// of column i and row i of the table.
double marginal_tv(std::span<const double> states, std::size_t n_chains,
                   std::size_t dim, const MarginalTable& marginals);
double marginal_tv(const ChainEnsemble& ensemble, const MarginalTable& marginals);

/// Histograms of every column of a sample matrix on the given edges.
MarginalTable empirical_marginals(std::span<const double> samples,
                                  std::size_t n_samples, std::size_t dim,
                                  std::vector<double> edges);

/// Fraction of samples strictly greater than split.
double mode_mass(std::span<const double> samples, double split);

/// CSV with columns bin_left,bin_right,count,reference_mass.
void write_histogram_csv(const std::filesystem::path& path, const Histogram1D& hist,
                         std::span<const double> reference_mass,
                         const std::vector<std::string>& comments = {});

}  // namespace daz
