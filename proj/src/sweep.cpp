#include "solc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "solc/analysis.hpp"

namespace solc {

void AxisSpec::validate() const {
  if (count < 2) throw InvalidParameter("axis '" + name + "' needs count >= 2");
  if (!(std::isfinite(min) && std::isfinite(max) && min < max)) {
    throw InvalidParameter("axis '" + name + "' needs finite min < max");
  }
}

double AxisSpec::value(int i) const noexcept {
  // Weighted form keeps symmetric axes exactly antisymmetric.
  const double last = count - 1;
  return (min * (last - i) + max * i) / last;
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = value(i);
  return v;
}

std::string_view quantity_name(Quantity q) noexcept {
  return q == Quantity::kEmission ? "emission" : "mandel_q";
}

Quantity parse_quantity(std::string_view name) {
  if (name == "emission") return Quantity::kEmission;
  if (name == "mandel_q") return Quantity::kMandelQ;
  throw InvalidParameter("unknown quantity '" + std::string(name) + "'");
}

int resolve_threads(int requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Rows are handed out through an atomic counter; each row writes only its
// own slice of the output, so the result does not depend on scheduling.
void for_each_row(int rows, int threads, const std::function<void(int)>& body) {
  const int workers = std::min(resolve_threads(threads), rows);
  if (workers <= 1) {
    for (int r = 0; r < rows; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) body(r);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
        next.store(rows);
      }
    });
  }
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

ScalarGrid scan_emission(int n_segments, const AxisSpec& delta_axis, const AxisSpec& eta_axis,
                         const SweepOptions& opts) {
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  delta_axis.validate();
  eta_axis.validate();
  const KernelBackend backend = resolve_backend(opts.backend);

  ScalarGrid grid;
  grid.x_axis = delta_axis;
  grid.y_axis = eta_axis;
  grid.quantity = Quantity::kEmission;
  grid.meta.n_segments = n_segments;
  grid.meta.backend = std::string(backend_name(backend));
  const auto nx = static_cast<std::size_t>(delta_axis.count);
  grid.values.resize(nx * static_cast<std::size_t>(eta_axis.count));

  std::vector<double> deltas = delta_axis.values();
  for (double& d : deltas) d *= kPi;

  for_each_row(eta_axis.count, opts.threads, [&](int iy) {
    const std::vector<double> etas(nx, std::fabs(eta_axis.value(iy)));
    const std::span<double> row(grid.values.data() + static_cast<std::size_t>(iy) * nx, nx);
    emission_batch(n_segments, etas, deltas, row, backend);
    for (double& v : row) v = std::clamp(v, 0.0, 1.0);
  });
  return grid;
}

ScalarGrid scan_mandel_q(int n_segments, double eta0, double d_cav, const AxisSpec& n_axis,
                         const AxisSpec& delta_axis, const SweepOptions& opts) {
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  n_axis.validate();
  delta_axis.validate();
  if (!(n_axis.min > 0.0)) throw InvalidParameter("n axis must start above 0");
  if (!(d_cav > 0.0)) throw InvalidParameter("d_cav must be positive");
  const KernelBackend backend = resolve_backend(opts.backend);

  ScalarGrid grid;
  grid.x_axis = n_axis;
  grid.y_axis = delta_axis;
  grid.quantity = Quantity::kMandelQ;
  grid.meta.n_segments = n_segments;
  grid.meta.eta0 = eta0;
  grid.meta.d_cav = d_cav;
  grid.meta.dn_rule = "max(1e-3*n, 1e-3)";
  grid.meta.backend = std::string(backend_name(backend));
  const auto nx = static_cast<std::size_t>(n_axis.count);
  grid.values.resize(nx * static_cast<std::size_t>(delta_axis.count));

  const std::vector<double> ns = n_axis.values();
  std::vector<double> dns(nx), eta_up(nx), eta_down(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    dns[i] = default_dn(ns[i]);
    if (!(ns[i] > dns[i])) throw InvalidParameter("n axis too close to 0 for the difference step");
    eta_up[i] = std::sqrt(ns[i] + dns[i]) * eta0;
    eta_down[i] = std::sqrt(ns[i] - dns[i]) * eta0;
  }

  for_each_row(delta_axis.count, opts.threads, [&](int iy) {
    const std::vector<double> deltas(nx, delta_axis.value(iy) * kPi);
    std::vector<double> up(nx), down(nx);
    emission_batch(n_segments, eta_up, deltas, up, backend);
    emission_batch(n_segments, eta_down, deltas, down, backend);
    double* row = grid.values.data() + static_cast<std::size_t>(iy) * nx;
    for (std::size_t i = 0; i < nx; ++i) {
      row[i] = mandel_q_from_slope((up[i] - down[i]) / (2.0 * dns[i]), d_cav);
    }
  });
  return grid;
}

GridMinimum stable_mandel_minimum(const ScalarGrid& grid) {
  GridMinimum best;
  for (int iy = 0; iy < grid.y_axis.count; ++iy) {
    for (int ix = 0; ix < grid.x_axis.count; ++ix) {
      const double q = grid.at(ix, iy);
      if (!std::isfinite(q) || !(q > -1.0)) continue;
      if (best.ix < 0 || q < best.value) best = {ix, iy, q};
    }
  }
  return best;
}

namespace {

// Clips the ray from the origin along (cos t / pi, sin t) against the box.
BranchLine clip_line(int p, double theta, const AxisSpec& dx, const AxisSpec& ey) {
  BranchLine line;
  line.p = p;
  line.theta = theta;
  const double dir_x = std::cos(theta) / kPi;  // delta/pi per unit phi
  const double dir_y = std::sin(theta);
  double t0 = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  auto clip = [&](double d, double lo, double hi) {
    if (std::fabs(d) < 1e-15) return lo <= 0.0 && 0.0 <= hi;
    double a = lo / d, b = hi / d;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    return true;
  };
  const bool ok = clip(dir_x, dx.min, dx.max) && clip(dir_y, ey.min, ey.max);
  if (!ok || !(t0 < t1) || !std::isfinite(t1)) return line;
  line.visible = true;
  line.x0 = t0 * dir_x;
  line.y0 = t0 * dir_y;
  line.x1 = t1 * dir_x;
  line.y1 = t1 * dir_y;
  return line;
}

}  // namespace

BranchGeometry branch_geometry(int n_segments, int q_max, const std::pair<AxisSpec, AxisSpec>& bounds) {
  if (n_segments < 1) throw InvalidParameter("n_segments must be >= 1");
  if (q_max < 1) throw InvalidParameter("q_max must be >= 1");
  const auto& [dx, ey] = bounds;
  dx.validate();
  ey.validate();
  BranchGeometry g;
  g.n_segments = n_segments;
  for (int p = 1; p <= n_segments; ++p) g.lines.push_back(clip_line(p, branch_theta(n_segments, p), dx, ey));
  for (int q = 1; q <= q_max; ++q) g.circles.push_back({q, (2 * q - 1) * kPi});
  for (const auto& pt : phase_match_points(n_segments, q_max)) {
    const double x = pt.delta_opt / kPi;
    const bool inside = x >= dx.min && x <= dx.max && pt.eta_opt >= ey.min && pt.eta_opt <= ey.max;
    g.intersections.push_back({pt, inside});
  }
  return g;
}

AxisSpec default_map_delta_axis() { return {"delta_over_pi", -4.0, 4.0, 501}; }
AxisSpec default_map_eta_axis() { return {"eta", 0.0, 4.0 * kPi, 501}; }
AxisSpec default_mandel_n_axis() { return {"n", 1.0, 1000.0, 401}; }
AxisSpec default_mandel_delta_axis() { return {"delta_over_pi", -4.0, 4.0, 401}; }

}  // namespace solc
