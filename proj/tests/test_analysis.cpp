#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "solc/analysis.hpp"
#include "solc/bloch.hpp"
#include "solc/transfer.hpp"

using namespace solc;

TEST_CASE("passband peaks at phi = pi on every branch line") {
  for (int n : {1, 2, 5, 8}) {
    for (int p = 1; p <= n; ++p) {
      const auto s = passband(n, p, 2 * kPi, 401);
      CHECK(s.values[200] == doctest::Approx(1.0).epsilon(1e-9));
      for (double v : s.values) REQUIRE((v >= 0.0 && v <= 1.0));
    }
  }
  CHECK_THROWS_AS(passband(4, 0, kPi, 10), InvalidParameter);
  CHECK_THROWS_AS(passband(4, 5, kPi, 10), InvalidParameter);
  CHECK_THROWS_AS(passband(4, 1, kPi, 1), InvalidParameter);
  CHECK_THROWS_AS(passband(4, 1, 0.0, 10), InvalidParameter);
}

TEST_CASE("passband local maxima sit on the branch circles") {
  const int samples = 3001;
  const double phi_max = 6 * kPi;
  const auto s = passband(6, 1, phi_max, samples);
  const double cell = phi_max / (samples - 1);
  for (int q = 1; q <= 3; ++q) {
    const double target = (2 * q - 1) * kPi;
    const auto center = static_cast<std::size_t>(std::lround(target / cell));
    std::size_t best = center;
    for (std::size_t i = center - 20; i <= center + 20; ++i) {
      if (s.values[i] > s.values[best]) best = i;
    }
    CHECK(std::fabs(s.phi_axis[best] - target) <= cell);
  }
}

TEST_CASE("passband_fwhm of the unipolar Rabi lineshape is pi") {
  // sin^2(phi/2) crosses 1/2 at pi/2 and 3pi/2, both exact samples here.
  const auto s = passband(1, 1, 2 * kPi, 2001);
  CHECK(passband_fwhm(s, kPi) == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("passband narrows with N and is sharpest at p = 1") {
  double prev = 1e9;
  for (int m = 1; m <= 6; ++m) {
    const double w = passband_fwhm(passband(2 * m, 1, 2 * kPi, 4001), kPi);
    CHECK(w < prev);
    prev = w;
  }
  const double w8 = passband_fwhm(passband(8, 1, 2 * kPi, 4001), kPi);
  const double w4 = passband_fwhm(passband(4, 1, 2 * kPi, 4001), kPi);
  CHECK(w8 / w4 < 1.0);
  CHECK(w8 < passband_fwhm(passband(8, 4, 2 * kPi, 4001), kPi));
}

TEST_CASE("passband_fwhm peak-not-found") {
  PassbandSpectrum s;
  s.phi_axis = {0.0, 1.0, 2.0, 3.0, 4.0};
  s.values = {0.1, 0.2, 0.4, 0.2, 0.1};
  CHECK_THROWS_AS(passband_fwhm(s, 2.0), PeakNotFound);
  s.values = {0.9, 0.95, 1.0, 0.2, 0.1};  // left flank never halves
  CHECK_THROWS_AS(passband_fwhm(s, 2.0), PeakNotFound);
  s.values = {0.1, 0.2, 1.0, 0.2, 0.1};
  CHECK_THROWS_AS(passband_fwhm(s, 0.0), PeakNotFound);  // peak too far from center
  CHECK(passband_fwhm(s, 2.0) == doctest::Approx(2.0 * (1.0 - 0.3 / 0.8)));
}

TEST_CASE("emission_vs_n examples") {
  CHECK(emission_vs_n(5, 0.24, 1.0, 0.0) == 0.0);
  const double eta0 = 0.3;
  for (double n : {1.0, 10.0, 50.0}) {
    const double x = std::sqrt(n) * eta0 / 2;
    CHECK(emission_vs_n(1, eta0, 0.0, n) == doctest::Approx(std::sin(x) * std::sin(x)).epsilon(1e-14));
  }
  const double first_max = (kPi / eta0) * (kPi / eta0);
  CHECK(emission_vs_n(1, eta0, 0.0, first_max) == doctest::Approx(1.0).epsilon(1e-14));

  const double t = kPi / 16;
  const double n = std::pow(kPi * std::sin(t) / 0.24, 2);
  CHECK(emission_vs_n(8, 0.24, kPi * std::cos(t), n) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(emission_vs_n(8, 0.24, 0.0, -1.0), InvalidParameter);
}

TEST_CASE("Mandel Q algebra") {
  CHECK(mandel_q_from_slope(0.0, 0.004) == 0.0);
  CHECK(mandel_q_from_slope(-0.004, 0.004) == doctest::Approx(-0.5));
  CHECK(std::isinf(mandel_q_from_slope(0.004, 0.004)));

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> us(-1.0, 1.0), ud(1e-4, 1.0);
  int checked = 0;
  while (checked < 10000) {
    const double s = us(rng), d = ud(rng);
    if (std::fabs(d - s) <= 1e-9) continue;
    const double q = mandel_q_from_slope(s, d);
    const double back = q * d / (1.0 + q);  // invert Q = s/(d - s)
    REQUIRE(std::fabs(back - s) <= 1e-12 * std::fabs(s));
    ++checked;
  }
}

TEST_CASE("mandel_q point fields and preconditions") {
  const auto q = mandel_q(8, 0.24, 0.0038, 20.0, 0.5, default_dn(20.0));
  CHECK(q.q_value == doctest::Approx(q.slope / (0.0038 - q.slope)).epsilon(1e-15));
  CHECK(q.stable == (q.slope < 0.0038));
  CHECK_THROWS_AS(mandel_q(8, 0.24, 0.0038, 1e-4, 0.5, 1e-3), InvalidParameter);
  CHECK_THROWS_AS(mandel_q(8, 0.24, 0.0, 20.0, 0.5, 1e-3), InvalidParameter);
  CHECK_THROWS_AS(mandel_q(8, 0.24, 0.0038, 20.0, 0.5, 0.0), InvalidParameter);
  CHECK(default_dn(0.5) == 1e-3);
  CHECK(default_dn(500.0) == doctest::Approx(0.5));
}

TEST_CASE("mandel_q slope matches the chain rule through eta") {
  const double eta0 = 0.24;
  for (double n : {5.0, 13.5, 80.0, 400.0}) {
    for (double d : {0.3, 0.98 * kPi, 2.2 * kPi}) {
      const auto q = mandel_q(8, eta0, 0.0038, n, d, default_dn(n));
      const double eta = std::sqrt(n) * eta0;
      const double h = 1e-5;
      const double dp_deta = (emission_direct(ReducedParams(eta + h, d, 8)) -
                              emission_direct(ReducedParams(eta - h, d, 8))) / (2 * h);
      const double chain = dp_deta * eta0 / (2 * std::sqrt(n));
      CHECK(std::fabs(q.slope - chain) < 1e-6 * (1.0 + std::fabs(chain)));
    }
  }
}

TEST_CASE("mandel_q is symmetric in delta") {
  for (double d : {0.2, 1.7, 3.1, 9.0}) {
    const auto a = mandel_q(8, 0.24, 0.0038, 30.0, d, default_dn(30.0));
    const auto b = mandel_q(8, 0.24, 0.0038, 30.0, -d, default_dn(30.0));
    CHECK(std::fabs(a.q_value - b.q_value) < 1e-12);
  }
}

TEST_CASE("fourier coefficient of the mean") {
  for (int n = 1; n <= 9; ++n) {
    const auto c = fourier_coefficients(n, 4);
    CHECK(c.at(0).real() == doctest::Approx((n % 2) ? 1.0 / n : 0.0));
    CHECK(c.at(0).imag() == 0.0);
  }
  CHECK_THROWS_AS(fourier_coefficients(4, 0), InvalidParameter);
}

TEST_CASE("fourier coefficients match Simpson quadrature") {
  for (int n : {1, 2, 5, 8}) {
    for (double l : {-7.0, -1.0, 1.0, 2.0, 3.5, 4.0, 11.0}) {
      const Complex closed = fourier_coefficient(n, l);
      const auto quad = oracle::fourier_quadrature(n, l);
      CHECK(std::abs(closed - quad) < 1e-10);
    }
  }
}

TEST_CASE("N = 2 coupling is dominated by l = +-1") {
  const auto c = fourier_coefficients(2, 10);
  const double top = std::norm(c.at(1));
  CHECK(std::norm(c.at(-1)) == doctest::Approx(top));
  for (const auto& [l, g] : c.coefficients) {
    if (std::abs(l) != 1) CHECK(std::norm(g) < top);
  }
}

TEST_CASE("fourier invariants: Hermitian symmetry and Parseval") {
  for (int n : {1, 3, 4, 16}) {
    const auto c = fourier_coefficients(n, 400);
    for (int l = 1; l <= 400; ++l) {
      REQUIRE(std::abs(c.at(-l) - std::conj(c.at(l))) < 1e-12);
    }
    double partial = std::norm(c.at(0));
    double prev = partial;
    for (int l = 1; l <= 400; ++l) {
      partial += std::norm(c.at(l)) + std::norm(c.at(-l));
      REQUIRE(partial >= prev);
      REQUIRE(partial <= 1.0 + 1e-12);
      prev = partial;
    }
    CHECK(partial > 0.99);
  }
}

TEST_CASE("weak-coupling prediction tracks the exact lineshape") {
  std::vector<double> deltas;
  for (int i = 0; i <= 600; ++i) deltas.push_back((-3.0 + 6.0 * i / 600) * kPi);
  const auto w = weak_coupling_prediction(16, 0.1, deltas);
  CHECK(w.warnings.empty());
  CHECK(w.correlation > 0.9);
  CHECK(*std::max_element(w.exact.begin(), w.exact.end()) == 1.0);
  const auto peak = std::max_element(w.exact.begin(), w.exact.end()) - w.exact.begin();
  CHECK(std::fabs(std::fabs(deltas[static_cast<std::size_t>(peak)] / kPi) - 1.0) < 0.15);
  // delta = pi is a comb point: s = N/2.
  CHECK(w.comb_index[400] == 8);
  CHECK(w.on_comb[400]);
  CHECK(!w.on_comb[401]);
}

TEST_CASE("strong coupling emits a warning but still runs") {
  const auto w = weak_coupling_prediction(16, 3.0, {0.5, 1.0, 2.0});
  CHECK(w.warnings.size() == 1);
  CHECK(w.exact.size() == 3);
}

TEST_CASE("pearson correlation basics") {
  CHECK(pearson_correlation({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(pearson_correlation({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson_correlation({1}, {1}), InvalidParameter);
}
