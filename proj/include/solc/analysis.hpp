#pragma once

#include <map>
#include <string>
#include <vector>

#include "solc/core.hpp"

namespace solc {

struct PassbandSpectrum {
  int n_segments = 1;
  int p = 1;
  double theta = 0.0;
  std::vector<double> phi_axis;
  std::vector<double> values;
};

/// P_em along phi in [0, phi_max] at the fixed branch angle of line p.
PassbandSpectrum passband(int n_segments, int p, double phi_max, int samples);

/// Full width at half maximum of the peak nearest center_phi, by linear
/// interpolation on both flanks. Throws PeakNotFound unless a local maximum
/// >= 0.999 sits within one sample of center_phi and both flanks fall below
/// half of it inside the spectrum.
double passband_fwhm(const PassbandSpectrum& s, double center_phi);

/// P_em with eta = sqrt(n) * eta0.
double emission_vs_n(int n_segments, double eta0, double delta, double n);

struct MandelQPoint {
  double n = 0.0;
  double delta = 0.0;
  double slope = 0.0;    // dP_em/dn
  double q_value = 0.0;  // +-inf when d_cav - slope vanishes
  bool singular = false;

  /// The linearized photon-number steady state is stable only for
  /// slope < d_cav; elsewhere the Q formula has no physical meaning.
  bool stable = true;
};

inline constexpr double kMandelSingularity = 1e-12;

/// Default difference step max(1e-3 n, 1e-3).
double default_dn(double n) noexcept;

/// Q = s/(d_cav - s) for a given slope; signed infinity at the pole.
double mandel_q_from_slope(double slope, double d_cav) noexcept;

/// Central difference of emission_vs_n in n, then the Q formula.
/// Requires n > dn > 0 and d_cav > 0.
MandelQPoint mandel_q(int n_segments, double eta0, double d_cav, double n, double delta, double dn);

struct FourierCoefficients {
  int n_segments = 1;
  std::map<int, Complex> coefficients;  // in units of g0

  [[nodiscard]] Complex at(int l) const { return coefficients.at(l); }
};

/// Exact Fourier-series coefficient of the square-wave coupling at integer
/// or fractional index l (units of g0, time in units of tau).
Complex fourier_coefficient(int n_segments, double l);

FourierCoefficients fourier_coefficients(int n_segments, int l_max);

struct WeakCouplingPrediction {
  int n_segments = 1;
  double eta = 0.0;
  std::vector<double> delta;       // radians
  std::vector<int> comb_index;     // s = round(N delta / 2 pi)
  std::vector<bool> on_comb;       // N delta / 2 pi within 1e-9 of s
  std::vector<double> prediction;  // |G^(s)|^2, max-normalized
  std::vector<double> exact;       // P_em, max-normalized
  double correlation = 0.0;        // Pearson, prediction vs exact
  std::vector<std::string> warnings;
};

/// First-order weak-coupling estimate of the detuning lineshape from the
/// coupling spectrum, side by side with the exact P_em.
WeakCouplingPrediction weak_coupling_prediction(int n_segments, double eta, const std::vector<double>& delta_axis);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace solc
