#pragma once

#include "solc/core.hpp"

namespace solc {

// 2x2 complex matrix; every matrix built here is unitary with det = 1.
struct Unitary2 {
  Complex u11{1.0, 0.0};
  Complex u12{0.0, 0.0};
  Complex u21{0.0, 0.0};
  Complex u22{1.0, 0.0};

  static Unitary2 identity() noexcept { return {}; }

  [[nodiscard]] Complex det() const noexcept { return u11 * u22 - u12 * u21; }
  [[nodiscard]] Unitary2 adjoint() const noexcept;
  /// Largest entrywise deviation of U U^dagger from the identity.
  [[nodiscard]] double unitarity_error() const noexcept;
};

Unitary2 operator*(const Unitary2& a, const Unitary2& b) noexcept;
State2 operator*(const Unitary2& u, const State2& s) noexcept;

/// Chebyshev angle of the phase-stripped cell: cos(xi) = Re(T11).
struct CellAngle {
  double xi = 0.0;
  double cos_xi = 1.0;
  double sin_xi = 0.0;
  bool near_degenerate = true;  // |sin xi| < 1e-6
};

inline constexpr double kDegenerateSinXi = 1e-6;

/// Evolution over segment m (1-based) in the interaction picture.
Unitary2 segment_unitary(int m, const ReducedParams& r);

/// Two-segment cell U^(2k) U^(2k-1), built by multiplying segment unitaries.
Unitary2 unit_cell(int k, const ReducedParams& r);

/// Closed-form entries of the same cell, including its k-dependent phases.
Unitary2 unit_cell_closed(int k, const ReducedParams& r);

/// Cell with the k-dependent phase factors removed.
Unitary2 reduced_cell(const ReducedParams& r);

/// Throws DegenerateParameters when phi == 0.
CellAngle cell_angle(const ReducedParams& r);

/// sin(k xi)/sin(xi), i.e. U_{k-1}(cos xi). Negative k follows the odd
/// extension sin(-k xi)/sin(xi) = -ratio(k).
double chebyshev_ratio(int k, const CellAngle& angle) noexcept;

/// reduced_cell(r)^k through the Chebyshev identity.
Unitary2 reduced_cell_power(const ReducedParams& r, int k);

/// Product U^(N) ... U^(1), accumulated by left multiplication.
Unitary2 sequential_product(const ReducedParams& r);

/// Product T^(K) ... T^(1) of the phase-carrying cells.
Unitary2 cell_product(const ReducedParams& r, int cells);

State2 evolve_sequential(const ReducedParams& r, const State2& initial);

/// |c_g|^2 after N segments from the excited state; the reference route.
double emission_direct(const ReducedParams& r);

/// Chebyshev closed form. Throws InternalConsistency if the raw value leaves
/// [-1e-9, 1 + 1e-9].
double emission_closed(const ReducedParams& r);

/// Hard-coded low-order polynomials, N in 1..8; Unsupported otherwise.
double table_polynomial(int n_segments, const ReducedParams& r);

}  // namespace solc
