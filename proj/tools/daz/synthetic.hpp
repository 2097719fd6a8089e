#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace daz::app {

struct SyntheticData {
  std::vector<double> clean;
  std::vector<double> noisy;
};

/// Piecewise-constant signal of length d with a handful of jumps, plus
/// Gaussian noise of standard deviation sigma.
SyntheticData synthetic_chain(std::size_t d, double sigma, std::uint64_t seed);

/// rows x cols image of overlapping rectangles and a disc, plus noise.
SyntheticData synthetic_image(std::size_t rows, std::size_t cols, double sigma,
                              std::uint64_t seed);

}  // namespace daz::app
