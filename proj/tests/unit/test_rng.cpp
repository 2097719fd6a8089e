#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "daz/rng.hpp"

using namespace daz;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                             K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                             K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("uniform_open01 stays inside the open interval") {
  CHECK(uniform_open01(0) > 0.0);
  CHECK(uniform_open01(~0ULL) < 1.0);
}

TEST_CASE("normal stream is addressable and reproducible") {
  NormalStream s(42), s2(42), other(43);
  std::vector<double> a(7), b(7);
  s.fill(3, 10, a.data(), a.size());
  s2.fill(3, 10, b.data(), b.size());
  CHECK(a == b);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(s.draw(3, 10, j) == a[j]);
  CHECK(other.draw(3, 10, 0) != a[0]);
  CHECK(s.draw(4, 10, 0) != a[0]);
  CHECK(s.draw(3, 11, 0) != a[0]);
  // a prefix of a longer fill is the shorter fill
  std::vector<double> longer(20);
  s.fill(3, 10, longer.data(), longer.size());
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(longer[j] == a[j]);
}

TEST_CASE("normal stream moments") {
  NormalStream s(7);
  const std::size_t n = 400000;
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  std::size_t tail = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double z = s.draw(k % 1000, 1 + k / 1000, 0);
    m1 += z;
    m2 += z * z;
    m3 += z * z * z;
    m4 += z * z * z * z;
    if (std::abs(z) > 1.96) ++tail;
  }
  m1 /= n; m2 /= n; m3 /= n; m4 /= n;
  CHECK(std::abs(m1) < 5 / std::sqrt(double(n)));
  CHECK(std::abs(m2 - 1) < 5 * std::sqrt(2.0 / n));
  CHECK(std::abs(m3) < 5 * std::sqrt(15.0 / n));
  CHECK(std::abs(m4 - 3) < 5 * std::sqrt(96.0 / n));
  const double p = double(tail) / n;
  CHECK(std::abs(p - 0.05) < 5 * std::sqrt(0.05 * 0.95 / n));
}

TEST_CASE("neighbouring coordinates are uncorrelated") {
  NormalStream s(99);
  const std::size_t n = 200000;
  double c01 = 0, c12 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double z[3];
    s.fill(k, 1, z, 3);
    c01 += z[0] * z[1];
    c12 += z[1] * z[2];
  }
  CHECK(std::abs(c01 / n) < 5 / std::sqrt(double(n)));
  CHECK(std::abs(c12 / n) < 5 / std::sqrt(double(n)));
}
