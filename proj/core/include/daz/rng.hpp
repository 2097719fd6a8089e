#pragma once

#include <array>
#include <cstdint>

namespace daz {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block of
/// random bits is a pure function of (key, counter), so any draw can be
/// regenerated independently of evaluation order.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Standard-normal draws addressed by (seed, chain, iteration, coordinate).
///
/// The counter is (coordinate / 2, chain, iteration low, iteration high) and
/// the key is the 64-bit seed; one Philox block feeds one Box-Muller pair.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  /// Fills out[j] = Z(chain, iteration, j) for j < n.
  void fill(std::uint64_t chain, std::uint64_t iteration, double* out,
            std::size_t n) const noexcept;

  double draw(std::uint64_t chain, std::uint64_t iteration,
              std::uint64_t coordinate) const noexcept;

 private:
  Philox4x32::Key key_;
};

/// Uniform double in (0, 1) from 64 random bits.
inline double uniform_open01(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace daz
