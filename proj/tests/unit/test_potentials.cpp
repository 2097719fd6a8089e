#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "daz/errors.hpp"
#include "daz/model.hpp"
#include "daz/potentials.hpp"
#include "oracles.hpp"

using namespace daz;

namespace {

ModelSpec symmetric_mixture() {
  return ModelSpec::gaussian_mixture({{-1.0, 0.5, 0.25}, {1.0, 0.5, 0.25}});
}

double mixture_density(double x) {
  const double s = 0.25;
  auto n = [&](double m) {
    return std::exp(-(x - m) * (x - m) / (2 * s * s)) / (s * std::sqrt(2 * std::numbers::pi));
  };
  return 0.5 * n(-1.0) + 0.5 * n(1.0);
}

std::vector<ModelSpec> all_models() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> y5(5), y12(12);
  for (auto& v : y5) v = n(rng);
  for (auto& v : y12) v = n(rng);
  return {ModelSpec::laplace(1.0), ModelSpec::laplace(2.5, 4), symmetric_mixture(),
          ModelSpec::tv_chain(y5, 0.1, 30.0), ModelSpec::tv_image(y12, 3, 4, 0.05, 30.0)};
}

}  // namespace

TEST_CASE("eval_F on the data term") {
  auto m = ModelSpec::tv_chain({0.0}, 0.1, 30.0);
  CHECK(eval_F(m, std::vector<double>{1.0}) == doctest::Approx(50.0).epsilon(1e-14));
  auto chain = ModelSpec::tv_chain({0.3, -0.2, 1.0}, 0.1, 30.0);
  CHECK(eval_F(chain, chain.y) == 0.0);
  CHECK(eval_F(ModelSpec::laplace(1.0), std::vector<double>{3.7}) == 0.0);
  CHECK_THROWS_AS(eval_F(chain, std::vector<double>{1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("grad_F values") {
  auto m = ModelSpec::tv_chain({0.0}, 0.1, 30.0);
  auto g = grad_F(m, std::vector<double>{1.0});
  REQUIRE(g.size() == 1);
  CHECK(g[0] == doctest::Approx(100.0).epsilon(1e-14));
  auto chain = ModelSpec::tv_chain({0.3, -0.2, 1.0}, 0.1, 30.0);
  for (double v : grad_F(chain, chain.y)) CHECK(v == 0.0);
  CHECK_THROWS_AS(grad_F(chain, std::vector<double>{1.0}), DimensionMismatch);
}

TEST_CASE("grad_F matches central differences at random points") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (const auto& model : all_models()) {
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> x(model.dim());
      for (auto& v : x) v = n(rng);
      const auto g = grad_F(model, x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto f = [&](double s) {
          auto xs = x;
          xs[i] = s;
          return eval_F(model, xs);
        };
        const double fd = daz::testing::central_difference(f, x[i], 1e-5);
        CHECK(std::abs(fd - g[i]) <= 1e-6 * std::max(1.0, std::abs(g[i])));
      }
    }
  }
}

TEST_CASE("eval_G examples") {
  CHECK(eval_G(ModelSpec::laplace(1.0), std::vector<double>{2.0}) == 2.0);
  auto chain = ModelSpec::tv_chain({0.0, 0.0, 0.0, 0.0}, 0.1, 30.0);
  CHECK(eval_G(chain, std::vector<double>(4, 1.25)) == 0.0);
  CHECK(eval_G(chain, std::vector<double>{0.0, 1.0, 1.0, -1.0}) == doctest::Approx(90.0));
  const double g0 = eval_G(symmetric_mixture(), std::vector<double>{0.0});
  CHECK(g0 == doctest::Approx(-std::log(mixture_density(0.0))).epsilon(1e-13));
  CHECK_THROWS_AS(eval_G(chain, std::vector<double>{1.0}), DimensionMismatch);
}

TEST_CASE("image TV uses forward differences with a Neumann boundary") {
  // 2x2 image [[0,1],[3,7]]: horizontal |1-0| + |7-3|, vertical |3-0| + |7-1|
  auto img = ModelSpec::tv_image({0, 0, 0, 0}, 2, 2, 1.0, 1.0);
  CHECK(eval_G(img, std::vector<double>{0, 1, 3, 7}) == doctest::Approx(14.0));
}

TEST_CASE("eval_G lower bounds") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 3.0);
  const double max_density = mixture_density(1.0);
  for (const auto& model : all_models()) {
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> x(model.dim());
      for (auto& v : x) v = n(rng);
      const double g = eval_G(model, x);
      if (model.kind == ModelKind::GaussianMixture)
        CHECK(g >= -std::log(max_density) - 1e-12);
      else
        CHECK(g >= 0.0);
    }
  }
}

TEST_CASE("subgradient_bound examples") {
  CHECK(subgradient_bound(ModelSpec::laplace(1.0), 0.0) == 1.0);
  CHECK(subgradient_bound(ModelSpec::laplace(1.0), 17.0) == 1.0);
  CHECK(subgradient_bound(ModelSpec::tv_chain({0, 0}, 0.1, 30.0), 2.0) <=
        30.0 * std::sqrt(8.0) + 1e-12);
  CHECK(subgradient_bound(symmetric_mixture(), 0.0) >= 0.0);
  auto g = subgradient_G(symmetric_mixture(), std::vector<double>{0.0});
  CHECK(std::abs(g[0]) < 1e-12);
}

TEST_CASE("sampled subgradients respect subgradient_bound") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (const auto& model : all_models()) {
    for (double s : {0.5, 2.0, 10.0}) {
      const double bound = subgradient_bound(model, s);
      for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> x(model.dim());
        double norm = 0.0;
        for (auto& v : x) {
          v = n(rng);
          norm += v * v;
        }
        norm = std::sqrt(norm);
        std::uniform_real_distribution<double> r(0.0, s);
        const double radius = r(rng);
        for (auto& v : x) v *= radius / norm;
        const auto p = subgradient_G(model, x);
        double pn = 0.0;
        for (double v : p) pn += v * v;
        CHECK(std::sqrt(pn) <= bound + 1e-9);
      }
    }
  }
}

TEST_CASE("TV chain subgradient grid for d = 2") {
  auto model = ModelSpec::tv_chain({0, 0}, 0.1, 30.0);
  const double bound = subgradient_bound(model, 1.0);
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      std::vector<double> x{i / 20.0 / std::sqrt(2.0), j / 20.0 / std::sqrt(2.0)};
      const auto p = subgradient_G(model, x);
      CHECK(std::hypot(p[0], p[1]) <= bound);
    }
  }
}

TEST_CASE("ScalarPotential derivatives agree with finite differences") {
  ScalarPotential g(symmetric_mixture());
  for (double y = -3.0; y <= 3.0; y += 0.173) {
    auto v = [&](double s) { return g.value(s); };
    auto d = [&](double s) { return g.derivative(s); };
    CHECK(g.derivative(y) == doctest::Approx(daz::testing::central_difference(v, y, 1e-6)).epsilon(1e-6));
    CHECK(g.second_derivative(y) ==
          doctest::Approx(daz::testing::central_difference(d, y, 1e-6)).epsilon(1e-5).scale(1.0));
    CHECK(g.density(y) == doctest::Approx(mixture_density(y)).epsilon(1e-13));
  }
  // G''(0) = 1/s^2 - (mu/s^2)^2 for the symmetric pair
  CHECK(g.second_derivative(0.0) == doctest::Approx(16.0 - 256.0));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(ModelSpec::laplace(0.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(ModelSpec::gaussian_mixture({{0.0, 0.4, 1.0}, {1.0, 0.4, 1.0}}).validate(),
                  InvalidArgument);
  ModelSpec bad = ModelSpec::tv_chain({0.0, 1.0}, 0.1, 1.0);
  bad.y.push_back(2.0);
  CHECK_THROWS_AS(bad.validate(), DimensionMismatch);
  CHECK(model_kind_from_string("tv-image") == ModelKind::TVImage);
  CHECK(to_string(ModelKind::GaussianMixture) == "gaussian-mixture");
  CHECK_THROWS_AS(model_kind_from_string("potts"), InvalidArgument);
}
