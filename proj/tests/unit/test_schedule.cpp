#include <doctest.h>

#include <cmath>
#include <vector>

#include "daz/errors.hpp"
#include "daz/schedule.hpp"

using namespace daz;

TEST_CASE("geometric schedule endpoints") {
  const auto lap = ModelSpec::laplace(1.0);
  auto s = make_schedule(1e-3, 10.0, 3, lap, 1.0);
  REQUIRE(s.ts.size() == 3);
  CHECK(s.ts[0] == 10.0);
  CHECK(s.ts[1] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(s.ts[2] == 1e-3);
  CHECK(s.strictly_decreasing());

  auto single = make_schedule(1e-3, 10.0, 1, lap, 1.0);
  REQUIRE(single.ts.size() == 1);
  CHECK(single.ts[0] == 1e-3);

  auto many = make_schedule(1e-4, 2.0, 500, lap, 1.0, 3);
  CHECK(many.levels() == 500);
  CHECK(many.total_iterations() == 1500);
  CHECK(many.strictly_decreasing());
  for (std::size_t n = 1; n + 1 < many.ts.size(); ++n) {
    const double r0 = std::log(many.ts[n - 1] / many.ts[n]);
    const double r1 = std::log(many.ts[n] / many.ts[n + 1]);
    CHECK(r0 == doctest::Approx(r1).epsilon(1e-9));
  }
  for (std::size_t n = 0; n < many.ts.size(); ++n) CHECK(many.taus[n] == many.ts[n]);
}

TEST_CASE("schedule errors") {
  const auto lap = ModelSpec::laplace(1.0);
  CHECK_THROWS_AS(make_schedule(1.0, 0.1, 10, lap, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_schedule(0.0, 1.0, 10, lap, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_schedule(1e-3, 1.0, 0, lap, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_schedule(1e-3, 1.0, 10, lap, 1.0, 0), InvalidArgument);
  AnnealSchedule bad{{1.0, 2.0}, {0.1, 0.1}, 1};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  AnnealSchedule mismatched{{2.0, 1.0}, {0.1}, 1};
  CHECK_THROWS_AS(mismatched.validate(), InvalidArgument);
  AnnealSchedule::constant(0.1, 0.05, 4).validate();
}

TEST_CASE("step size rule") {
  const auto lap = ModelSpec::laplace(1.0);
  CHECK(step_size_rule(0.1, lap, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
  const auto chain = ModelSpec::tv_chain(std::vector<double>(5, 0.0), 0.1, 30.0);
  CHECK(step_size_rule(1.0, chain, 1.0) == doctest::Approx(1.0 / 101.0).epsilon(1e-13));
  double prev = 0.0;
  for (double t = 1e-4; t < 1e6; t *= 3.0) {
    const double tau = step_size_rule(t, chain, 1.0);
    CHECK(tau > prev);
    CHECK(tau < 0.01);
    prev = tau;
  }
  CHECK(prev == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(step_size_rule(1e6, lap, 1.0) == doctest::Approx(1e6));
  CHECK_THROWS_AS(step_size_rule(1.0, lap, 0.0), InvalidArgument);
  CHECK_THROWS_AS(step_size_rule(1.0, lap, 2.0), InvalidArgument);
  CHECK_THROWS_AS(step_size_rule(-1.0, lap, 1.0), InvalidArgument);
}
