#include "solc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "solc/bloch.hpp"
#include "solc/transfer.hpp"

namespace solc {

PassbandSpectrum passband(int n_segments, int p, double phi_max, int samples) {
  if (samples < 2) throw InvalidParameter("passband needs at least 2 samples");
  if (!(phi_max > 0.0)) throw InvalidParameter("phi_max must be positive");
  PassbandSpectrum s;
  s.n_segments = n_segments;
  s.p = p;
  s.theta = branch_theta(n_segments, p);
  s.phi_axis.resize(static_cast<std::size_t>(samples));
  s.values.resize(s.phi_axis.size());
  const double last = samples - 1;
  for (int i = 0; i < samples; ++i) {
    const double phi = phi_max * i / last;
    s.phi_axis[static_cast<std::size_t>(i)] = phi;
    s.values[static_cast<std::size_t>(i)] = emission_direct(reduced_from_polar(phi, s.theta, n_segments));
  }
  return s;
}

namespace {

// Position where the segment (i0, i1) crosses `level`.
double crossing(const PassbandSpectrum& s, std::size_t i0, std::size_t i1, double level) {
  const double v0 = s.values[i0];
  const double v1 = s.values[i1];
  const double f = (v0 == v1) ? 0.0 : (level - v0) / (v1 - v0);
  return s.phi_axis[i0] + f * (s.phi_axis[i1] - s.phi_axis[i0]);
}

}  // namespace

double passband_fwhm(const PassbandSpectrum& s, double center_phi) {
  const std::size_t n = s.values.size();
  if (n < 3 || s.phi_axis.size() != n) throw PeakNotFound("spectrum too short");

  const auto nearest_it = std::min_element(s.phi_axis.begin(), s.phi_axis.end(), [&](double a, double b) {
    return std::fabs(a - center_phi) < std::fabs(b - center_phi);
  });
  const auto nearest = static_cast<std::size_t>(nearest_it - s.phi_axis.begin());
  const std::size_t lo = nearest == 0 ? 0 : nearest - 1;
  const std::size_t hi = std::min(n - 1, nearest + 1);
  std::size_t peak = lo;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (s.values[i] > s.values[peak]) peak = i;
  }
  const double top = s.values[peak];
  const bool local_max = (peak == 0 || s.values[peak - 1] <= top) && (peak + 1 == n || s.values[peak + 1] <= top);
  if (top < 0.999 || !local_max) throw PeakNotFound("no peak >= 0.999 near phi = " + std::to_string(center_phi));

  const double half = 0.5 * top;
  std::size_t left = peak;
  while (left > 0 && s.values[left - 1] >= half) --left;
  if (left == 0) throw PeakNotFound("left flank never drops below half maximum");
  std::size_t right = peak;
  while (right + 1 < n && s.values[right + 1] >= half) ++right;
  if (right + 1 == n) throw PeakNotFound("right flank never drops below half maximum");

  return crossing(s, right, right + 1, half) - crossing(s, left - 1, left, half);
}

double emission_vs_n(int n_segments, double eta0, double delta, double n) {
  if (!(n >= 0.0)) throw InvalidParameter("mean photon number must be >= 0");
  return emission_direct(ReducedParams(std::sqrt(n) * eta0, delta, n_segments));
}

double default_dn(double n) noexcept { return std::max(1e-3 * n, 1e-3); }

double mandel_q_from_slope(double slope, double d_cav) noexcept {
  const double denom = d_cav - slope;
  if (std::fabs(denom) < kMandelSingularity) {
    const double sign = (slope == 0.0) ? 1.0 : std::copysign(1.0, slope) * std::copysign(1.0, denom);
    return sign * std::numeric_limits<double>::infinity();
  }
  return slope / denom;
}

MandelQPoint mandel_q(int n_segments, double eta0, double d_cav, double n, double delta, double dn) {
  if (!(dn > 0.0) || !(n > dn)) throw InvalidParameter("mandel_q requires n > dn > 0");
  if (!(d_cav > 0.0)) throw InvalidParameter("d_cav must be positive");
  MandelQPoint out;
  out.n = n;
  out.delta = delta;
  const double up = emission_vs_n(n_segments, eta0, delta, n + dn);
  const double down = emission_vs_n(n_segments, eta0, delta, n - dn);
  out.slope = (up - down) / (2.0 * dn);
  out.q_value = mandel_q_from_slope(out.slope, d_cav);
  out.singular = std::isinf(out.q_value);
  out.stable = out.slope < d_cav;
  return out;
}

Complex fourier_coefficient(int n_segments, double l) {
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  const double big_n = n_segments;
  if (l == 0.0) return {(n_segments % 2 == 1) ? 1.0 / big_n : 0.0, 0.0};
  // (1/N) sum_m (-1)^{m+1} int_{m-1}^{m} exp(i k t) dt, k = 2 pi l / N.
  const double k = 2.0 * kPi * l / big_n;
  const Complex ik(0.0, k);
  Complex sum(0.0, 0.0);
  for (int m = 1; m <= n_segments; ++m) {
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    sum += sign * (std::polar(1.0, k * m) - std::polar(1.0, k * (m - 1)));
  }
  return sum / ik / big_n;
}

FourierCoefficients fourier_coefficients(int n_segments, int l_max) {
  if (l_max < 1) throw InvalidParameter("l_max must be >= 1");
  FourierCoefficients out;
  out.n_segments = n_segments;
  out.coefficients[0] = fourier_coefficient(n_segments, 0.0);
  for (int l = 1; l <= l_max; ++l) {
    const Complex g = fourier_coefficient(n_segments, l);
    out.coefficients[l] = g;
    out.coefficients[-l] = std::conj(g);
  }
  return out;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw InvalidParameter("correlation needs equal sizes >= 2");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

namespace {

void normalize_max(std::vector<double>& v) {
  const double top = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (top > 0.0) {
    for (double& x : v) x /= top;
  }
}

}  // namespace

WeakCouplingPrediction weak_coupling_prediction(int n_segments, double eta, const std::vector<double>& delta_axis) {
  if (delta_axis.empty()) throw InvalidParameter("delta axis is empty");
  WeakCouplingPrediction out;
  out.n_segments = n_segments;
  out.eta = std::fabs(eta);
  out.delta = delta_axis;
  if (!(out.eta < 1.0)) {
    out.warnings.push_back("eta = " + std::to_string(out.eta) +
                           " is outside the weak-coupling regime (eta < 1); the first-order prediction is unreliable");
  }
  const std::size_t count = delta_axis.size();
  out.comb_index.resize(count);
  out.on_comb.resize(count);
  out.prediction.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double fractional = n_segments * delta_axis[i] / (2.0 * kPi);
    const double s = std::round(fractional);
    out.comb_index[i] = static_cast<int>(s);
    out.on_comb[i] = std::fabs(fractional - s) < 1e-9;
    out.prediction[i] = std::norm(fourier_coefficient(n_segments, s));
  }
  out.exact.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.exact[i] = emission_direct(ReducedParams(out.eta, delta_axis[i], n_segments));
  }
  normalize_max(out.prediction);
  normalize_max(out.exact);
  out.correlation = pearson_correlation(out.prediction, out.exact);
  return out;
}

}  // namespace solc
