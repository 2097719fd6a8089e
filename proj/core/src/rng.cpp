#include "daz/rng.hpp"

#include <cmath>
#include <numbers>

namespace daz {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline std::uint64_t join(std::uint32_t lo, std::uint32_t hi) noexcept {
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

inline void box_muller(const Philox4x32::Counter& bits, double& z0, double& z1) noexcept {
  const double u1 = uniform_open01(join(bits[0], bits[1]));
  const double u2 = uniform_open01(join(bits[2], bits[3]));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(theta);
  z1 = r * std::sin(theta);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

void NormalStream::fill(std::uint64_t chain, std::uint64_t iteration, double* out,
                        std::size_t n) const noexcept {
  const auto c1 = static_cast<std::uint32_t>(chain);
  const auto it_lo = static_cast<std::uint32_t>(iteration);
  const auto it_hi = static_cast<std::uint32_t>(iteration >> 32);
  std::size_t j = 0;
  for (std::uint32_t block = 0; j < n; ++block) {
    double z0, z1;
    box_muller(Philox4x32::generate({block, c1, it_lo, it_hi}, key_), z0, z1);
    out[j++] = z0;
    if (j < n) out[j++] = z1;
  }
}

double NormalStream::draw(std::uint64_t chain, std::uint64_t iteration,
                          std::uint64_t coordinate) const noexcept {
  const auto block = static_cast<std::uint32_t>(coordinate / 2);
  double z0, z1;
  box_muller(Philox4x32::generate({block, static_cast<std::uint32_t>(chain),
                                   static_cast<std::uint32_t>(iteration),
                                   static_cast<std::uint32_t>(iteration >> 32)},
                                  key_),
             z0, z1);
  return coordinate % 2 == 0 ? z0 : z1;
}

}  // namespace daz
