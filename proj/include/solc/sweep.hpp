#pragma once

#include <string>
#include <utility>
#include <vector>

#include "solc/bloch.hpp"
#include "solc/kernels.hpp"

namespace solc {

// Uniform axis, inclusive of both endpoints. Detuning axes are expressed in
// units of pi (name "delta_over_pi"); every other axis is raw.
struct AxisSpec {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  /// Throws InvalidParameter unless min < max and count >= 2.
  void validate() const;
  [[nodiscard]] double value(int i) const noexcept;
  [[nodiscard]] std::vector<double> values() const;
  /// Grid spacing.
  [[nodiscard]] double step() const noexcept { return (max - min) / (count - 1); }
  /// Fractional index of a coordinate (not clamped).
  [[nodiscard]] double index_of(double v) const noexcept { return (v - min) / step(); }
};

enum class Quantity { kEmission, kMandelQ };

std::string_view quantity_name(Quantity q) noexcept;
Quantity parse_quantity(std::string_view name);

struct GridMeta {
  int n_segments = 1;
  double eta0 = 0.0;   // mandel_q only
  double d_cav = 0.0;  // mandel_q only
  std::string dn_rule;
  std::string backend;
};

// Row-major values with y outer and x inner.
struct ScalarGrid {
  AxisSpec x_axis;
  AxisSpec y_axis;
  Quantity quantity = Quantity::kEmission;
  GridMeta meta;
  std::vector<double> values;

  [[nodiscard]] double at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(x_axis.count) + static_cast<std::size_t>(ix)];
  }
};

struct SweepOptions {
  int threads = 0;  // 0 = hardware concurrency
  KernelBackend backend = KernelBackend::kAuto;
};

/// Number of workers actually used for a request.
int resolve_threads(int requested) noexcept;

/// P_em on x = delta/pi, y = eta.
ScalarGrid scan_emission(int n_segments, const AxisSpec& delta_axis, const AxisSpec& eta_axis,
                         const SweepOptions& opts = {});

/// Mandel Q on x = n, y = delta/pi, with the default dn rule.
ScalarGrid scan_mandel_q(int n_segments, double eta0, double d_cav, const AxisSpec& n_axis,
                         const AxisSpec& delta_axis, const SweepOptions& opts = {});

struct GridMinimum {
  int ix = -1;
  int iy = -1;
  double value = 0.0;
};

/// Smallest finite Q with Q > -1, i.e. over nodes where the slope is below
/// d_cav and the photon-number steady state is stable. ix = -1 if none.
GridMinimum stable_mandel_minimum(const ScalarGrid& grid);

struct BranchLine {
  int p = 1;
  double theta = 0.0;
  bool visible = false;
  // Endpoints in (delta/pi, eta).
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

struct BranchCircle {
  int q = 1;
  double radius = 0.0;  // in phi, (2q-1) pi
};

struct BranchIntersection {
  PhaseMatchPoint point;
  bool in_bounds = false;
};

struct BranchGeometry {
  int n_segments = 1;
  std::vector<BranchLine> lines;
  std::vector<BranchCircle> circles;
  std::vector<BranchIntersection> intersections;
};

/// Bounds are (delta/pi axis, eta axis).
BranchGeometry branch_geometry(int n_segments, int q_max, const std::pair<AxisSpec, AxisSpec>& bounds);

// Defaults for the reproduction grids.
AxisSpec default_map_delta_axis();
AxisSpec default_map_eta_axis();
AxisSpec default_mandel_n_axis();
AxisSpec default_mandel_delta_axis();
inline constexpr double kDefaultEta0 = 0.24;
inline constexpr double kDefaultDCav = 0.0038;

}  // namespace solc
