#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace solc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidParameter : Error {
  using Error::Error;
};
struct DegenerateParameters : Error {
  using Error::Error;
};
struct InternalConsistency : Error {
  using Error::Error;
};
struct Unsupported : Error {
  using Error::Error;
};
struct PeakNotFound : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// Physical inputs in consistent angular-frequency / time units.
struct PhysicalParams {
  double g0 = 0.0;
  double tau = 1.0;
  double n = 1.0;           // mean photon number, continuous
  double delta_freq = 0.0;  // cavity-atom detuning
};

// Dimensionless parameters consumed by every formula. Time is measured in
// units of the segment duration, so the segment length is 1 internally.
struct ReducedParams {
  double eta = 0.0;    // pulse area per segment, canonical eta >= 0
  double delta = 0.0;  // detuning per segment
  int n_segments = 1;

  ReducedParams() = default;
  ReducedParams(double eta_, double delta_, int n_segments_);

  /// Net precession angle per segment, sqrt(eta^2 + delta^2).
  [[nodiscard]] double phi() const noexcept;
};

struct PolarParams {
  double phi = 0.0;
  double theta = 0.0;  // atan2(eta, delta); 0 at the origin
};

struct State2 {
  Complex c_e{1.0, 0.0};
  Complex c_g{0.0, 0.0};

  [[nodiscard]] double norm2() const noexcept { return std::norm(c_e) + std::norm(c_g); }
};

/// Throws InvalidParameter for tau <= 0, n < 0 or n_segments < 1.
ReducedParams reduce(const PhysicalParams& p, int n_segments);

PolarParams to_polar(const ReducedParams& r) noexcept;

/// Inverse of to_polar. The sign of eta is kept, so theta in (pi, 2pi) style
/// inputs reconstruct negative eta before normalization by ReducedParams.
struct EtaDelta {
  double eta;
  double delta;
};
EtaDelta from_polar(const PolarParams& p) noexcept;

/// Reduced parameters on the point (phi, theta).
ReducedParams reduced_from_polar(double phi, double theta, int n_segments);

}  // namespace solc
