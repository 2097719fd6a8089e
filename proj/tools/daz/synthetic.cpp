#include "synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "daz/errors.hpp"
#include "daz/rng.hpp"

namespace daz::app {

namespace {

// Uniform draws from the counter-based generator, so data are identical on
// every platform.
class Uniforms {
 public:
  explicit Uniforms(std::uint64_t seed) : key_{static_cast<std::uint32_t>(seed),
                                               static_cast<std::uint32_t>(seed >> 32)} {}
  double next() {
    const auto block = Philox4x32::generate({counter_++, 0xda7a, 0, 0}, key_);
    const std::uint64_t bits = (std::uint64_t{block[0]} << 32) | block[1];
    return uniform_open01(bits);
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t counter_ = 0;
};

void add_noise(SyntheticData& data, double sigma, std::uint64_t seed) {
  const NormalStream noise(seed);
  data.noisy.resize(data.clean.size());
  // chain index 1 keeps the noise apart from the layout draws
  noise.fill(1, 1, data.noisy.data(), data.noisy.size());
  for (std::size_t i = 0; i < data.clean.size(); ++i)
    data.noisy[i] = data.clean[i] + sigma * data.noisy[i];
}

}  // namespace

SyntheticData synthetic_chain(std::size_t d, double sigma, std::uint64_t seed) {
  if (d == 0) throw InvalidArgument("synthetic chain: d must be positive");
  Uniforms u(seed);
  const std::size_t pieces = std::max<std::size_t>(1, std::min<std::size_t>(6, d / 8));
  std::vector<std::size_t> cuts{0, d};
  while (cuts.size() < pieces + 1) {
    const auto c = static_cast<std::size_t>(u.next() * static_cast<double>(d));
    if (c > 0 && std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  SyntheticData data;
  data.clean.resize(d);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double level = std::round(8.0 * (2.0 * u.next() - 1.0)) / 8.0;
    for (std::size_t i = cuts[k]; i < cuts[k + 1]; ++i) data.clean[i] = level;
  }
  add_noise(data, sigma, seed);
  return data;
}

SyntheticData synthetic_image(std::size_t rows, std::size_t cols, double sigma,
                              std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw InvalidArgument("synthetic image: empty size");
  Uniforms u(seed);
  SyntheticData data;
  data.clean.assign(rows * cols, 0.0);
  for (int r = 0; r < 3; ++r) {
    const auto i0 = static_cast<std::size_t>(u.next() * rows * 0.6);
    const auto j0 = static_cast<std::size_t>(u.next() * cols * 0.6);
    const auto h = static_cast<std::size_t>(rows * (0.2 + 0.3 * u.next()));
    const auto w = static_cast<std::size_t>(cols * (0.2 + 0.3 * u.next()));
    const double level = 0.25 + 0.25 * r;
    for (std::size_t i = i0; i < std::min(rows, i0 + h); ++i)
      for (std::size_t j = j0; j < std::min(cols, j0 + w); ++j) data.clean[i * cols + j] = level;
  }
  const double ci = rows * (0.3 + 0.4 * u.next()), cj = cols * (0.3 + 0.4 * u.next());
  const double radius = 0.2 * static_cast<double>(std::min(rows, cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (std::hypot(i + 0.5 - ci, j + 0.5 - cj) < radius) data.clean[i * cols + j] = 1.0;
  add_noise(data, sigma, seed);
  return data;
}

}  // namespace daz::app
