#include "solc/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace solc {

double BlochVector::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

double Trajectory::max_norm_drift() const noexcept {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::fabs(s.r.norm() - 1.0));
  return worst;
}

BlochVector bloch_from_state(const State2& s) noexcept {
  const Complex coherence = s.c_e * std::conj(s.c_g);
  return {2.0 * coherence.real(), -2.0 * coherence.imag(), std::norm(s.c_e) - std::norm(s.c_g)};
}

TorqueVector torque(int m, const ReducedParams& r) {
  if (m < 1) throw InvalidParameter("segment index must be >= 1");
  return {(m % 2 == 1) ? r.eta : -r.eta, 0.0, r.delta};
}

State2 to_bloch_frame(const State2& interaction, const ReducedParams& r, int segments) noexcept {
  // Undo the accumulated diag(e^{i N delta/2}, e^{-i N delta/2}) and
  // conjugate: the matrices of the sequential product are written for the
  // opposite sense of rotation to the precession equation.
  const double half = 0.5 * segments * r.delta;
  const Complex ce = interaction.c_e * std::polar(1.0, -half);
  const Complex cg = interaction.c_g * std::polar(1.0, half);
  return {std::conj(ce), std::conj(cg)};
}

BlochVector final_bloch_from_matrix(const ReducedParams& r) {
  return bloch_from_state(to_bloch_frame(evolve_sequential(r, State2{}), r, r.n_segments));
}

namespace {

BlochVector cross(const BlochVector& a, const TorqueVector& w) noexcept {
  return {a.y * w.z - a.z * w.y, a.z * w.x - a.x * w.z, a.x * w.y - a.y * w.x};
}

BlochVector axpy(const BlochVector& r, double h, const BlochVector& k) noexcept {
  return {r.x + h * k.x, r.y + h * k.y, r.z + h * k.z};
}

BlochVector rk4_step(const BlochVector& r, const TorqueVector& w, double h) noexcept {
  const BlochVector k1 = cross(r, w);
  const BlochVector k2 = cross(axpy(r, 0.5 * h, k1), w);
  const BlochVector k3 = cross(axpy(r, 0.5 * h, k2), w);
  const BlochVector k4 = cross(axpy(r, h, k3), w);
  const double s = h / 6.0;
  return {r.x + s * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x), r.y + s * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          r.z + s * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z)};
}

}  // namespace

Trajectory integrate_trajectory(const ReducedParams& r, int steps_per_segment, bool renormalize) {
  if (steps_per_segment < 16) throw InvalidParameter("steps_per_segment must be >= 16");
  Trajectory traj;
  traj.params = r;
  traj.steps_per_segment = steps_per_segment;
  traj.renormalized = renormalize;
  traj.samples.reserve(static_cast<std::size_t>(r.n_segments) * steps_per_segment + 1);

  BlochVector state{0.0, 0.0, 1.0};
  traj.samples.push_back({0.0, state, 0});
  const double h = 1.0 / steps_per_segment;
  for (int m = 1; m <= r.n_segments; ++m) {
    const TorqueVector w = torque(m, r);
    for (int j = 1; j <= steps_per_segment; ++j) {
      state = rk4_step(state, w, h);
      if (renormalize) {
        const double n = state.norm();
        state = {state.x / n, state.y / n, state.z / n};
      }
      const double t = (j == steps_per_segment) ? static_cast<double>(m) : (m - 1) + j * h;
      traj.samples.push_back({t, state, m});
    }
  }
  return traj;
}

double emission_from_trajectory(const Trajectory& t) {
  if (t.samples.empty()) throw InvalidParameter("empty trajectory");
  return std::clamp(0.5 * (1.0 - t.samples.back().r.z), 0.0, 1.0);
}

XZ reflection_model_final(int n_segments, double theta) noexcept {
  const double a = 2.0 * n_segments * theta;
  const double sign = (n_segments % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N+1}
  return {sign * std::sin(a), std::cos(a)};
}

double branch_theta(int n_segments, int p) {
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  if (p < 1 || p > n_segments) throw InvalidParameter("branch index p must be in 1..N");
  return (p - 0.5) * kPi / n_segments;
}

std::vector<PhaseMatchPoint> phase_match_points(int n_segments, int q_max) {
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  if (q_max < 1) throw InvalidParameter("q_max must be >= 1");
  std::vector<PhaseMatchPoint> out;
  out.reserve(static_cast<std::size_t>(2 * n_segments * q_max));
  for (int q = 1; q <= q_max; ++q) {
    const double radius = (2 * q - 1) * kPi;
    for (int p = 1; p <= n_segments; ++p) {
      const double theta = branch_theta(n_segments, p);
      // theta = pi/2 exactly when 2p - 1 == N; cos(pi/2) would leave ~6e-17.
      const double cos_t = (2 * p - 1 == n_segments) ? 0.0 : std::cos(theta);
      const double eta = radius * std::sin(theta);
      for (int sign : {1, -1}) {
        out.push_back({p, q, sign, theta, sign * radius * cos_t, eta});
      }
    }
  }
  return out;
}

}  // namespace solc
