#pragma once

#include <vector>

#include "solc/core.hpp"
#include "solc/transfer.hpp"

namespace solc {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  [[nodiscard]] double norm() const noexcept;
};

// Drive vector of the precession R' = R x Omega, in units of 1/tau.
struct TorqueVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct TrajectorySample {
  double t = 0.0;
  BlochVector r;
  int segment = 0;  // ceil(t); 0 only for the initial sample
};

struct Trajectory {
  ReducedParams params;
  int steps_per_segment = 0;
  bool renormalized = false;
  std::vector<TrajectorySample> samples;

  [[nodiscard]] double max_norm_drift() const noexcept;
};

struct PhaseMatchPoint {
  int p = 1;
  int q = 1;
  int sign = 1;  // sign of the detuning
  double theta = 0.0;
  double delta_opt = 0.0;
  double eta_opt = 0.0;

  [[nodiscard]] ReducedParams reduced(int n_segments) const { return ReducedParams(eta_opt, delta_opt, n_segments); }
};

struct XZ {
  double x;
  double z;
};

/// R = [2 Re(c_e c_g*), -2 Im(c_e c_g*), |c_e|^2 - |c_g|^2]; unit length
/// for a normalized state, (1,0) at the north pole.
BlochVector bloch_from_state(const State2& s) noexcept;

/// Torque during segment m: [+-eta, 0, delta], sign +1 for odd m.
TorqueVector torque(int m, const ReducedParams& r);

/// Maps an interaction-picture state after `segments` segments into the
/// frame rotating with the detuning, where its Bloch vector obeys the
/// precession equation with the torque above.
State2 to_bloch_frame(const State2& interaction, const ReducedParams& r, int segments) noexcept;

/// Bloch vector after N segments computed from the matrix product.
BlochVector final_bloch_from_matrix(const ReducedParams& r);

/// Fixed-step RK4 over [0, N]; steps never straddle a segment boundary.
/// Drift of |R| is reported, and only removed when `renormalize` is set.
Trajectory integrate_trajectory(const ReducedParams& r, int steps_per_segment = 1000, bool renormalize = false);

/// (1 - z_final)/2; throws InvalidParameter for an empty trajectory.
double emission_from_trajectory(const Trajectory& t);

/// Endpoint (x, z) under pi-rotations about alternately folded torque
/// vectors. Only meaningful on the branch circles phi = (2q-1) pi.
XZ reflection_model_final(int n_segments, double theta) noexcept;

/// Branch-line angle (p - 1/2) pi / N.
double branch_theta(int n_segments, int p);

/// All (p, q, +-) points of complete emission, sorted by (q, p, sign) with
/// the positive detuning first.
std::vector<PhaseMatchPoint> phase_match_points(int n_segments, int q_max);

}  // namespace solc
