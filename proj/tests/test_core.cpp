#include <cmath>
#include <random>

#include "doctest.h"
#include "solc/core.hpp"

using namespace solc;

TEST_CASE("reduce substitutes the definitions") {
  const auto r = reduce({1.0, 1.0, 1.0, 0.0}, 1);
  CHECK(r.eta == 2.0);
  CHECK(r.delta == 0.0);
  CHECK(r.n_segments == 1);

  const auto r2 = reduce({0.5, kPi, 4.0, 1.0}, 3);
  CHECK(r2.delta == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(r2.eta == doctest::Approx(2.0 * 2.0 * 0.5 * kPi));

  // eta0 = 2 g0 tau at n = 1.
  CHECK(reduce({0.12, 1.0, 1.0, 0.0}, 8).eta == doctest::Approx(0.24).epsilon(1e-15));
}

TEST_CASE("reduce rejects bad parameters") {
  CHECK_THROWS_AS(reduce({1.0, 0.0, 1.0, 0.0}, 1), InvalidParameter);
  CHECK_THROWS_AS(reduce({1.0, -1.0, 1.0, 0.0}, 1), InvalidParameter);
  CHECK_THROWS_AS(reduce({1.0, 1.0, 1.0, 0.0}, 0), InvalidParameter);
  CHECK_THROWS_AS(reduce({1.0, 1.0, -1.0, 0.0}, 1), InvalidParameter);
}

TEST_CASE("negative eta is normalized to |eta|") {
  const ReducedParams r(-1.5, 0.3, 2);
  CHECK(r.eta == 1.5);
  CHECK(reduce({-1.0, 1.0, 1.0, 0.0}, 1).eta == 2.0);
}

TEST_CASE("reduce is homogeneous in (g0, n)") {
  const double s = 3.0;
  const auto a = reduce({0.7, 1.3, 2.0, 0.1}, 4);
  const auto b = reduce({0.7 * s, 1.3, 2.0 / (s * s), 0.1}, 4);
  CHECK(a.eta == doctest::Approx(b.eta).epsilon(1e-15));
}

TEST_CASE("to_polar examples") {
  auto p = to_polar(ReducedParams(1.0, 0.0, 1));
  CHECK(p.phi == 1.0);
  CHECK(p.theta == doctest::Approx(kPi / 2));

  p = to_polar(ReducedParams(0.0, kPi, 1));
  CHECK(p.phi == doctest::Approx(kPi));
  CHECK(p.theta == 0.0);

  const double t = kPi / 10;
  p = to_polar(ReducedParams(kPi * std::sin(t), kPi * std::cos(t), 5));
  CHECK(p.phi == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(p.theta == doctest::Approx(t).epsilon(1e-14));

  p = to_polar(ReducedParams(0.0, 0.0, 1));
  CHECK(p.phi == 0.0);
  CHECK(p.theta == 0.0);
}

TEST_CASE("polar round trip over random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uphi(1e-6, 20 * kPi), uth(-kPi, kPi);
  for (int i = 0; i < 10000; ++i) {
    const double phi = uphi(rng), th = uth(rng);
    const EtaDelta ed = from_polar({phi, th});
    const ReducedParams r(ed.eta, ed.delta, 1);
    const auto back = from_polar(to_polar(r));
    // The reduced form keeps |eta|, so compare against that.
    REQUIRE(std::fabs(back.eta - std::fabs(ed.eta)) <= 1e-12 * phi);
    REQUIRE(std::fabs(back.delta - ed.delta) <= 1e-12 * phi);
  }
}
