#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "daz/bp.hpp"
#include "daz/csv.hpp"
#include "daz/errors.hpp"
#include "oracles.hpp"

using namespace daz;

TEST_CASE("single node marginals are a discretised Gaussian") {
  const auto m = ModelSpec::tv_chain({0.3}, 0.2, 30.0);
  const auto table = chain_bp_marginals(m, 16, -0.5, 1.1);
  const auto mid = table.midpoints();
  double z = 0;
  std::vector<double> want(16);
  for (std::size_t l = 0; l < 16; ++l) z += (want[l] = std::exp(-(mid[l] - 0.3) * (mid[l] - 0.3) / 0.08));
  for (std::size_t l = 0; l < 16; ++l) CHECK(table.row(0)[l] == doctest::Approx(want[l] / z).epsilon(1e-12));
}

TEST_CASE("zero coupling factorises") {
  const std::vector<double> y{0.0, 0.5, -0.3, 1.2};
  const auto joint = chain_bp_marginals(ModelSpec::tv_chain(y, 0.3, 0.0), 20, -1.5, 2.5);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto single = chain_bp_marginals(ModelSpec::tv_chain({y[i]}, 0.3, 0.0), 20, -1.5, 2.5);
    for (std::size_t l = 0; l < 20; ++l)
      CHECK(joint.row(i)[l] == doctest::Approx(single.row(0)[l]).epsilon(1e-12));
  }
}

TEST_CASE("BP equals exhaustive enumeration for d = 3, L = 7") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 0.5);
  for (double lambda : {0.5, 3.0, 30.0}) {
    std::vector<double> y(3);
    for (auto& v : y) v = n(rng);
    const auto table = chain_bp_marginals(ModelSpec::tv_chain(y, 0.4, lambda), 7, -1.5, 1.5);
    const auto want = daz::testing::chain_marginals_bruteforce(y, 0.4, lambda, 7, -1.5, 1.5);
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(std::abs(table.probs[k] - want[k]) <= 1e-10);
  }
}

TEST_CASE("BP marginals reverse with the chain") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> y(25);
  for (auto& v : y) v = n(rng);
  std::vector<double> ry(y.rbegin(), y.rend());
  const auto a = chain_bp_marginals(ModelSpec::tv_chain(y, 0.1, 30.0), 64, -3.5, 3.5);
  const auto b = chain_bp_marginals(ModelSpec::tv_chain(ry, 0.1, 30.0), 64, -3.5, 3.5);
  const std::size_t d = y.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < 64; ++l) CHECK(std::abs(a.row(i)[l] - b.row(d - 1 - i)[l]) <= 1e-12);
}

TEST_CASE("BP stays finite for strong coupling") {
  std::vector<double> y(50);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = (i / 10) % 2 ? 1.0 : -1.0;
  const auto m = ModelSpec::tv_chain(y, 0.1, 1000.0);
  const auto [lo, hi] = default_label_range(m);
  CHECK(lo == doctest::Approx(-1.4));
  CHECK(hi == doctest::Approx(1.4));
  const auto table = chain_bp_marginals(m, 256, lo, hi);
  table.validate(1e-10);
  for (double p : table.probs) CHECK(std::isfinite(p));
}

TEST_CASE("BP argument checks and export") {
  const auto m = ModelSpec::tv_chain({0.0, 1.0}, 0.1, 1.0);
  CHECK_THROWS_AS(chain_bp_marginals(m, 1, -1, 1), InvalidArgument);
  CHECK_THROWS_AS(chain_bp_marginals(ModelSpec::laplace(1.0), 8, -1, 1), InvalidArgument);

  const auto table = chain_bp_marginals(m, 4, -1.0, 2.0);
  const auto path = std::filesystem::temp_directory_path() / "daz_marginals_test.csv";
  write_marginals_csv(path, table, {"labels=4"});
  const auto rows = read_numeric_csv(path);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == table.midpoints());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t l = 0; l < 4; ++l) CHECK(rows[i + 1][l] == table.row(i)[l]);
  std::filesystem::remove(path);
}
