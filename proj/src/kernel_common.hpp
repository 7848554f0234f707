#pragma once

#include <cmath>

namespace solc::detail {

// Per-point coefficients of the co-rotating segment matrix
//   [[c + i a,  i s b], [i s b,  c - i a]],  s = +1 for odd segments.
struct SegmentCoeffs {
  double c;
  double a;
  double b;
};

inline SegmentCoeffs segment_coeffs(double eta, double delta) noexcept {
  const double phi = std::hypot(eta, delta);
  if (phi == 0.0) return {1.0, 0.0, 0.0};
  const double half = 0.5 * phi;
  const double s = std::sin(half);
  return {std::cos(half), (delta / phi) * s, (std::fabs(eta) / phi) * s};
}

}  // namespace solc::detail
