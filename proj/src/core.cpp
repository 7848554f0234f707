#include "solc/core.hpp"

#include <cmath>

namespace solc {

ReducedParams::ReducedParams(double eta_, double delta_, int n_segments_)
    : eta(std::fabs(eta_)), delta(delta_), n_segments(n_segments_) {
  if (n_segments_ < 1) {
    throw InvalidParameter("n_segments must be >= 1, got " + std::to_string(n_segments_));
  }
  if (!std::isfinite(eta_) || !std::isfinite(delta_)) {
    throw InvalidParameter("eta and delta must be finite");
  }
}

double ReducedParams::phi() const noexcept { return std::hypot(eta, delta); }

ReducedParams reduce(const PhysicalParams& p, int n_segments) {
  if (!(p.tau > 0.0)) throw InvalidParameter("tau must be positive");
  if (!(p.n >= 0.0)) throw InvalidParameter("mean photon number must be >= 0");
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  const double eta = 2.0 * std::sqrt(p.n) * p.g0 * p.tau;
  const double delta = p.delta_freq * p.tau;
  return ReducedParams(eta, delta, n_segments);
}

PolarParams to_polar(const ReducedParams& r) noexcept {
  const double phi = r.phi();
  if (phi == 0.0) return {0.0, 0.0};
  return {phi, std::atan2(r.eta, r.delta)};
}

EtaDelta from_polar(const PolarParams& p) noexcept {
  return {p.phi * std::sin(p.theta), p.phi * std::cos(p.theta)};
}

ReducedParams reduced_from_polar(double phi, double theta, int n_segments) {
  const auto ed = from_polar({phi, theta});
  return ReducedParams(ed.eta, ed.delta, n_segments);
}

}  // namespace solc
