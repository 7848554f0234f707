#include "solc/transfer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace solc {

namespace {

constexpr Complex kI{0.0, 1.0};

// x = (delta^2/phi^2) sin^2(phi/2); cos(xi) = 1 - 2x.
double detuning_weight(const ReducedParams& r) noexcept {
  const double phi = r.phi();
  if (phi == 0.0) return 0.0;
  const double s = std::sin(0.5 * phi);
  const double d = r.delta / phi;
  return d * d * s * s;
}

}  // namespace

Unitary2 Unitary2::adjoint() const noexcept {
  return {std::conj(u11), std::conj(u21), std::conj(u12), std::conj(u22)};
}

double Unitary2::unitarity_error() const noexcept {
  const Unitary2 p = *this * adjoint();
  return std::max({std::abs(p.u11 - 1.0), std::abs(p.u12), std::abs(p.u21), std::abs(p.u22 - 1.0)});
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) noexcept {
  return {a.u11 * b.u11 + a.u12 * b.u21, a.u11 * b.u12 + a.u12 * b.u22,
          a.u21 * b.u11 + a.u22 * b.u21, a.u21 * b.u12 + a.u22 * b.u22};
}

State2 operator*(const Unitary2& u, const State2& s) noexcept {
  return {u.u11 * s.c_e + u.u12 * s.c_g, u.u21 * s.c_e + u.u22 * s.c_g};
}

Unitary2 segment_unitary(int m, const ReducedParams& r) {
  if (m < 1) throw InvalidParameter("segment index must be >= 1");
  const double phi = r.phi();
  if (phi == 0.0) return Unitary2::identity();
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
  const Complex u11 = Complex(c, -(r.delta / phi) * s) * std::polar(1.0, 0.5 * r.delta);
  const Complex u12 = sign * kI * (r.eta / phi) * s * std::polar(1.0, (m - 0.5) * r.delta);
  return {u11, u12, -std::conj(u12), std::conj(u11)};
}

Unitary2 unit_cell(int k, const ReducedParams& r) {
  if (k < 1) throw InvalidParameter("cell index must be >= 1");
  return segment_unitary(2 * k, r) * segment_unitary(2 * k - 1, r);
}

Unitary2 unit_cell_closed(int k, const ReducedParams& r) {
  if (k < 1) throw InvalidParameter("cell index must be >= 1");
  const double phi = r.phi();
  if (phi == 0.0) return Unitary2::identity();
  const double s = std::sin(0.5 * phi);
  const double s2 = s * s;
  const double d = r.delta / phi;
  const Complex t11 = Complex(1.0 - 2.0 * d * d * s2, -d * std::sin(phi)) * std::polar(1.0, r.delta);
  const Complex t12 = -2.0 * (r.eta * r.delta / (phi * phi)) * s2 * std::polar(1.0, (2.0 * k - 1.0) * r.delta);
  return {t11, t12, -std::conj(t12), std::conj(t11)};
}

Unitary2 reduced_cell(const ReducedParams& r) {
  const double phi = r.phi();
  if (phi == 0.0) return Unitary2::identity();
  const double s = std::sin(0.5 * phi);
  const double s2 = s * s;
  const double d = r.delta / phi;
  const Complex t11(1.0 - 2.0 * d * d * s2, -d * std::sin(phi));
  const Complex t12(-2.0 * (r.eta * r.delta / (phi * phi)) * s2, 0.0);
  return {t11, t12, -std::conj(t12), std::conj(t11)};
}

CellAngle cell_angle(const ReducedParams& r) {
  if (r.phi() == 0.0) throw DegenerateParameters("cell angle undefined at phi = 0");
  // Half-angle form: sin^2(xi/2) = x. Clamping x to [0, 1] is the same as
  // clamping cos(xi) to [-1, 1], and atan2 keeps full precision at xi -> 0
  // and xi -> pi where arccos(1 - 2x) does not.
  const double x = std::clamp(detuning_weight(r), 0.0, 1.0);
  CellAngle a;
  a.xi = 2.0 * std::atan2(std::sqrt(x), std::sqrt(1.0 - x));
  a.cos_xi = 1.0 - 2.0 * x;
  a.sin_xi = 2.0 * std::sqrt(x * (1.0 - x));
  a.near_degenerate = std::fabs(a.sin_xi) < kDegenerateSinXi;
  return a;
}

double chebyshev_ratio(int k, const CellAngle& angle) noexcept {
  if (k == 0) return 0.0;
  if (k < 0) return -chebyshev_ratio(-k, angle);
  if (!angle.near_degenerate) return std::sin(k * angle.xi) / angle.sin_xi;
  // U_{k-1}(c) by the three-term recurrence, finite at sin(xi) = 0.
  const double two_c = 2.0 * angle.cos_xi;
  double prev = 0.0;  // U_{-1}
  double cur = 1.0;   // U_0
  for (int j = 1; j < k; ++j) {
    const double next = two_c * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Unitary2 reduced_cell_power(const ReducedParams& r, int k) {
  if (k < 0) throw InvalidParameter("power must be >= 0");
  if (k == 0 || r.phi() == 0.0) return Unitary2::identity();
  const Unitary2 t = reduced_cell(r);
  const CellAngle a = cell_angle(r);
  const double uk = chebyshev_ratio(k, a);
  const double ukm1 = chebyshev_ratio(k - 1, a);
  return {t.u11 * uk - ukm1, t.u12 * uk, t.u21 * uk, t.u22 * uk - ukm1};
}

Unitary2 sequential_product(const ReducedParams& r) {
  Unitary2 acc = Unitary2::identity();
  for (int m = 1; m <= r.n_segments; ++m) acc = segment_unitary(m, r) * acc;
  return acc;
}

Unitary2 cell_product(const ReducedParams& r, int cells) {
  Unitary2 acc = Unitary2::identity();
  for (int k = 1; k <= cells; ++k) acc = unit_cell(k, r) * acc;
  return acc;
}

State2 evolve_sequential(const ReducedParams& r, const State2& initial) {
  return sequential_product(r) * initial;
}

double emission_direct(const ReducedParams& r) {
  const State2 out = evolve_sequential(r, State2{});
  // |c_g|^2 can overshoot 1 by an ulp.
  return std::clamp(std::norm(out.c_g), 0.0, 1.0);
}

namespace {

double single_segment_emission(const ReducedParams& r, double phi) {
  const double s = std::sin(0.5 * phi);
  const double e = r.eta / phi;
  return e * e * s * s;
}

double two_segment_emission(const ReducedParams& r, double phi) {
  const double s = std::sin(0.5 * phi);
  const double s2 = s * s;
  const double p2 = phi * phi;
  return 4.0 * r.eta * r.eta * r.delta * r.delta / (p2 * p2) * s2 * s2;
}

double checked_probability(double p, const char* what) {
  constexpr double kSlack = 1e-9;
  if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
    throw InternalConsistency(std::string(what) + " produced out-of-range probability " + std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double emission_closed(const ReducedParams& r) {
  const double phi = r.phi();
  if (phi == 0.0) return 0.0;
  const int n = r.n_segments;
  const CellAngle a = cell_angle(r);
  double p = 0.0;
  if (n % 2 == 0) {
    const double ratio = chebyshev_ratio(n / 2, a);
    p = two_segment_emission(r, phi) * ratio * ratio;
  } else {
    // The weight multiplying sin(k xi)/sin(xi) is 1 - 4 (delta^2/phi^2)
    // sin^2(phi/2). The variant with delta^2/phi in place of delta^2/phi^2
    // disagrees with the matrix product and is not used.
    const int k = (n - 1) / 2;
    const double bracket = (1.0 - 4.0 * detuning_weight(r)) * chebyshev_ratio(k, a) - chebyshev_ratio(k - 1, a);
    p = single_segment_emission(r, phi) * bracket * bracket;
  }
  return checked_probability(p, "emission_closed");
}

double table_polynomial(int n_segments, const ReducedParams& r) {
  if (n_segments < 1 || n_segments > 8) {
    throw Unsupported("table polynomial only covers N = 1..8, got " + std::to_string(n_segments));
  }
  const double phi = r.phi();
  if (phi == 0.0) return 0.0;
  // Coefficients in powers of x = (delta^2/phi^2) sin^2(phi/2).
  static constexpr std::array<std::array<double, 4>, 9> kRows{{
      {0, 0, 0, 0},
      {1, 0, 0, 0},
      {1, 0, 0, 0},
      {1, -4, 0, 0},
      {2, -4, 0, 0},
      {1, -12, 16, 0},
      {3, -16, 16, 0},
      {1, -24, 80, -64},
      {4, -40, 96, -64},
  }};
  const double x = detuning_weight(r);
  const auto& c = kRows[static_cast<std::size_t>(n_segments)];
  const double poly = c[0] + x * (c[1] + x * (c[2] + x * c[3]));
  const double base = (n_segments % 2 == 1) ? single_segment_emission(r, phi) : two_segment_emission(r, phi);
  return base * poly * poly;
}

}  // namespace solc
