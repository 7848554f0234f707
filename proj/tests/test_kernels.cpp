#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "solc/kernels.hpp"
#include "solc/transfer.hpp"

using namespace solc;

namespace {

struct Batch {
  std::vector<double> eta, delta;
};

Batch random_batch(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 4 * kPi);
  Batch b;
  for (std::size_t i = 0; i < count; ++i) {
    b.eta.push_back(u(rng));
    b.delta.push_back(u(rng) - 2 * kPi);
  }
  // Edge points: origin, pure detuning, resonance.
  b.eta.insert(b.eta.end(), {0.0, 0.0, 1.0, kPi});
  b.delta.insert(b.delta.end(), {0.0, 1.0, 0.0, 0.0});
  return b;
}

}  // namespace

TEST_CASE("scalar kernel matches the sequential product") {
  const Batch b = random_batch(2001, 1);
  for (int n : {1, 2, 3, 7, 16, 33, 64}) {
    std::vector<double> out(b.eta.size());
    emission_batch(n, b.eta, b.delta, out, KernelBackend::kScalar);
    for (std::size_t i = 0; i < out.size(); ++i) {
      REQUIRE(std::fabs(out[i] - emission_direct(ReducedParams(b.eta[i], b.delta[i], n))) < 1e-12);
    }
  }
}

TEST_CASE("AVX2 kernel is bit-identical to the scalar kernel") {
  if (!avx2_available()) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  // Odd sizes exercise the scalar tail.
  for (std::size_t size : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{5}, std::size_t{1027}}) {
    const Batch b = random_batch(size, static_cast<unsigned>(size));
    for (int n : {1, 2, 5, 8, 16, 64}) {
      std::vector<double> scalar(b.eta.size()), simd(b.eta.size());
      emission_batch(n, b.eta, b.delta, scalar, KernelBackend::kScalar);
      emission_batch(n, b.eta, b.delta, simd, KernelBackend::kAvx2);
      REQUIRE(std::memcmp(scalar.data(), simd.data(), scalar.size() * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("auto backend resolves to an available kernel") {
  const auto b = resolve_backend(KernelBackend::kAuto);
  CHECK(b != KernelBackend::kAuto);
  CHECK((b == KernelBackend::kAvx2) == avx2_available());
  if (!avx2_available()) CHECK_THROWS_AS(resolve_backend(KernelBackend::kAvx2), Unsupported);
}

TEST_CASE("backend names round trip") {
  for (auto b : {KernelBackend::kAuto, KernelBackend::kScalar, KernelBackend::kAvx2}) {
    CHECK(parse_backend(backend_name(b)) == b);
  }
  CHECK_THROWS_AS(parse_backend("neon"), InvalidParameter);
}

TEST_CASE("emission_batch argument checks") {
  std::vector<double> a(3), b(4), out(3);
  CHECK_THROWS_AS(emission_batch(2, a, b, out), InvalidParameter);
  CHECK_THROWS_AS(emission_batch(0, a, a, out), InvalidParameter);
  std::vector<double> empty;
  CHECK_NOTHROW(emission_batch(2, empty, empty, empty));
}

TEST_CASE("kernel output is exactly mirror symmetric in delta") {
  const Batch b = random_batch(513, 77);
  std::vector<double> neg(b.delta);
  for (double& d : neg) d = -d;
  std::vector<double> p(b.eta.size()), m(b.eta.size());
  emission_batch(9, b.eta, b.delta, p);
  emission_batch(9, b.eta, neg, m);
  CHECK(std::memcmp(p.data(), m.data(), p.size() * sizeof(double)) == 0);
}
