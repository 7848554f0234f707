// solcsim: command-line front end for the poled atom-cavity simulator.
//
// Exit codes: 0 success, 2 invalid configuration, 3 internal inconsistency,
// 4 I/O failure. Diagnostics go to stderr; stdout only ever carries the
// single-line JSON summary requested with --summary.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "solc/analysis.hpp"
#include "solc/bloch.hpp"
#include "solc/io.hpp"
#include "solc/sweep.hpp"
#include "solc/transfer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;
constexpr int kExitIo = 4;

constexpr const char* kOutputDirEnv = "SOLCSIM_OUTPUT_DIR";

struct CommonOptions {
  std::string format = "csv";
  std::string out;
  bool plot_script = false;
  bool summary = false;
  int threads = 0;
  std::optional<long long> seed;  // reserved; nothing is stochastic
  std::string kernel = "auto";
};

struct AxisOptions {
  double min;
  double max;
  int count;
};

struct Config {
  int n_segments = 1;
  // map / mandelq axes
  AxisOptions delta{-4.0, 4.0, 501};
  AxisOptions eta{0.0, 4.0 * solc::kPi, 501};
  AxisOptions n_axis{1.0, 1000.0, 401};
  AxisOptions mandel_delta{-4.0, 4.0, 401};
  AxisOptions fourier_delta{-3.0, 3.0, 601};
  int q_max = 2;
  // trajectory
  std::optional<int> p;
  std::optional<int> q;
  std::optional<double> eta_value;
  std::optional<double> delta_over_pi;
  int steps = 1000;
  bool renormalize = false;
  // passband
  double phi_max = 2.0 * solc::kPi;
  int samples = 2001;
  // mandelq
  double eta0 = solc::kDefaultEta0;
  double d_cav = solc::kDefaultDCav;
  // fourier
  int l_max = 64;
};

struct Artifact {
  solc::io::Table table;
  std::string plot;  // gnuplot body; {data} is replaced by the data file name
  json summary = json::object();
};

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Output file (relative paths resolve against $" + std::string(kOutputDirEnv) + ")");
  sub->add_flag("--plot-script", c.plot_script, "Also write a gnuplot script next to a CSV output");
  sub->add_flag("--summary", c.summary, "Print a one-line JSON summary on stdout");
  sub->add_option("--threads", c.threads, "Worker cap (0 = auto)")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", c.seed, "Reserved; the computations are deterministic");
  sub->add_option("--kernel", c.kernel, "Grid kernel backend")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

void add_n_segments(CLI::App* sub, Config& cfg) {
  sub->add_option("--n-segments,-N", cfg.n_segments, "Number of poled segments N")
      ->required()
      ->check(CLI::PositiveNumber);
}

void add_axis(CLI::App* sub, const std::string& stem, AxisOptions& a, const std::string& what) {
  sub->add_option("--" + stem + "-min", a.min, what + " lower bound")->capture_default_str();
  sub->add_option("--" + stem + "-max", a.max, what + " upper bound")->capture_default_str();
  sub->add_option("--" + stem + "-count", a.count, what + " sample count")->capture_default_str();
}

solc::AxisSpec make_axis(const std::string& name, const AxisOptions& a) {
  solc::AxisSpec s{name, a.min, a.max, a.count};
  s.validate();
  return s;
}

json meta_defaults(const Config& cfg, const CommonOptions& c) {
  return {{"kernel", c.kernel}, {"steps_per_segment", cfg.steps},
          {"dn_rule", "max(1e-3*n, 1e-3)"}, {"seed", c.seed ? json(*c.seed) : json(nullptr)}};
}

std::string map_plot(const solc::BranchGeometry& g, const solc::AxisSpec& dx, const solc::AxisSpec& ey) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'delta/pi'\nset ylabel 'eta'\nset cblabel 'P_em'\n"
    << "set xrange [" << dx.min << ":" << dx.max << "]\nset yrange [" << ey.min << ":" << ey.max << "]\n"
    << "set cbrange [0:1]\nset size ratio -1\n";
  int id = 1;
  for (const auto& l : g.lines) {
    if (!l.visible) continue;
    s << "set arrow " << id++ << " from " << solc::io::format_double(l.x0) << "," << solc::io::format_double(l.y0)
      << " to " << solc::io::format_double(l.x1) << "," << solc::io::format_double(l.y1)
      << " nohead dt 2 lc rgb 'white' front\n";
  }
  s << "set parametric\nset trange [0:pi]\n";
  s << "plot '{data}' skip 2 using 1:2:3 with image notitle";
  for (const auto& c : g.circles) {
    const std::string r = solc::io::format_double(c.radius);
    s << ", " << r << "*cos(t)/pi, " << r << "*sin(t) dt 3 lc rgb 'white' notitle";
  }
  s << ", '-' using 1:2 with points pt 2 lc rgb 'red' notitle\n";
  for (const auto& i : g.intersections) {
    if (i.in_bounds) s << solc::io::format_double(i.point.delta_opt / solc::kPi) << "," << solc::io::format_double(i.point.eta_opt) << "\n";
  }
  s << "e\n";
  return s.str();
}

Artifact run_map(const Config& cfg, const CommonOptions& c, const solc::SweepOptions& sw) {
  const auto dx = make_axis("delta_over_pi", cfg.delta);
  const auto ey = make_axis("eta", cfg.eta);
  if (cfg.q_max < 1) throw solc::InvalidParameter("--q-max must be >= 1");
  const auto grid = solc::scan_emission(cfg.n_segments, dx, ey, sw);
  const auto geom = solc::branch_geometry(cfg.n_segments, cfg.q_max, {dx, ey});
  Artifact a;
  a.table = solc::io::to_table(grid);
  a.table.meta["defaults"] = meta_defaults(cfg, c);
  a.table.meta["branch_geometry"] = solc::io::to_json(geom);
  a.plot = map_plot(geom, dx, ey);
  a.summary = {{"nodes", grid.values.size()}, {"backend", grid.meta.backend}};
  return a;
}

Artifact run_mandelq(const Config& cfg, const CommonOptions& c, const solc::SweepOptions& sw) {
  const auto nx = make_axis("n", cfg.n_axis);
  const auto dy = make_axis("delta_over_pi", cfg.mandel_delta);
  const auto grid = solc::scan_mandel_q(cfg.n_segments, cfg.eta0, cfg.d_cav, nx, dy, sw);
  const auto best = solc::stable_mandel_minimum(grid);
  Artifact a;
  a.table = solc::io::to_table(grid);
  a.table.meta["defaults"] = meta_defaults(cfg, c);
  if (best.ix >= 0) {
    a.table.meta["stable_minimum"] = {{"q", best.value}, {"n", nx.value(best.ix)}, {"delta_over_pi", dy.value(best.iy)}};
    a.summary["min_q"] = best.value;
  }
  a.plot =
      "set datafile separator ','\nset xlabel 'n'\nset ylabel 'delta/pi'\nset cblabel 'Q'\n"
      "set cbrange [-1:0]\nplot '{data}' skip 2 using 1:2:($3 < 0 && $3 > -1 ? $3 : NaN) with image notitle\n";
  a.summary["nodes"] = grid.values.size();
  return a;
}

Artifact run_trajectory(const Config& cfg, const CommonOptions& c) {
  solc::ReducedParams r;
  if (cfg.p || cfg.q) {
    if (!(cfg.p && cfg.q)) throw solc::InvalidParameter("--p and --q must be given together");
    if (cfg.eta_value || cfg.delta_over_pi) throw solc::InvalidParameter("give either --p/--q or --eta/--delta-over-pi");
    if (*cfg.q < 1) throw solc::InvalidParameter("--q must be >= 1");
    const double theta = solc::branch_theta(cfg.n_segments, *cfg.p);
    r = solc::reduced_from_polar((2 * *cfg.q - 1) * solc::kPi, theta, cfg.n_segments);
  } else {
    if (!(cfg.eta_value && cfg.delta_over_pi)) throw solc::InvalidParameter("trajectory needs --p/--q or --eta/--delta-over-pi");
    r = solc::ReducedParams(*cfg.eta_value, *cfg.delta_over_pi * solc::kPi, cfg.n_segments);
  }
  const auto traj = solc::integrate_trajectory(r, cfg.steps, cfg.renormalize);
  Artifact a;
  a.table = solc::io::to_table(traj);
  a.table.meta["defaults"] = meta_defaults(cfg, c);
  const double p_ode = solc::emission_from_trajectory(traj);
  a.table.meta["p_em_ode"] = p_ode;
  a.table.meta["p_em_matrix"] = solc::emission_direct(r);
  a.plot =
      "set datafile separator ','\nset view equal xyz\nset xlabel 'x'\nset ylabel 'y'\nset zlabel 'z'\n"
      "set parametric\nset urange [0:2*pi]\nset vrange [-pi/2:pi/2]\nset isosamples 24,12\n"
      "splot cos(u)*cos(v),sin(u)*cos(v),sin(v) lc rgb 'gray' notitle, \\\n"
      "  '{data}' skip 2 using 3:4:5:(int($2)%2) with lines lc variable lw 2 notitle\n";
  a.summary = {{"p_em", p_ode}, {"final_z", traj.samples.back().r.z}, {"max_norm_drift", traj.max_norm_drift()}};
  return a;
}

Artifact run_passband(const Config& cfg, const CommonOptions& c) {
  if (!cfg.p) throw solc::InvalidParameter("passband needs --p");
  const auto s = solc::passband(cfg.n_segments, *cfg.p, cfg.phi_max, cfg.samples);
  double fwhm = std::numeric_limits<double>::quiet_NaN();
  try {
    fwhm = solc::passband_fwhm(s, solc::kPi);
  } catch (const solc::PeakNotFound& e) {
    std::cerr << "note: " << e.what() << "\n";
  }
  Artifact a;
  a.table = solc::io::to_table(s, fwhm);
  a.table.meta["defaults"] = meta_defaults(cfg, c);
  a.plot =
      "set datafile separator ','\nset xlabel 'phi/pi'\nset ylabel 'P_em'\nset yrange [0:1.05]\n"
      "plot '{data}' skip 2 using ($1/pi):4 with lines notitle\n";
  a.summary = {{"samples", s.values.size()}};
  if (std::isfinite(fwhm)) a.summary["fwhm_q1"] = fwhm;
  return a;
}

Artifact run_fourier(const Config& cfg, const CommonOptions& c) {
  Artifact a;
  if (cfg.eta_value) {
    const auto dx = make_axis("delta_over_pi", cfg.fourier_delta);
    std::vector<double> deltas = dx.values();
    for (double& d : deltas) d *= solc::kPi;
    const auto w = solc::weak_coupling_prediction(cfg.n_segments, *cfg.eta_value, deltas);
    for (const auto& msg : w.warnings) std::cerr << "warning: " << msg << "\n";
    a.table = solc::io::to_table(w);
    a.plot =
        "set datafile separator ','\nset xlabel 'delta/pi'\nset ylabel 'normalized'\n"
        "plot '{data}' skip 2 using 1:5 with lines title 'exact', '' skip 2 using 1:4 with steps title 'first order'\n";
    a.summary = {{"correlation", w.correlation}};
  } else {
    const auto f = solc::fourier_coefficients(cfg.n_segments, cfg.l_max);
    a.table = solc::io::to_table(f, cfg.l_max);
    a.plot =
        "set datafile separator ','\nset xlabel 'l'\nset ylabel '|G_l|^2 / g0^2'\n"
        "plot '{data}' skip 2 using 1:4 with impulses notitle\n";
    a.summary = {{"coefficients", f.coefficients.size()}};
  }
  a.table.meta["defaults"] = meta_defaults(cfg, c);
  return a;
}

Artifact run_phasematch(const Config& cfg, const CommonOptions& c) {
  const auto pts = solc::phase_match_points(cfg.n_segments, cfg.q_max);
  Artifact a;
  a.table = solc::io::to_table(cfg.n_segments, cfg.q_max, pts);
  a.table.meta["defaults"] = meta_defaults(cfg, c);
  a.plot =
      "set datafile separator ','\nset xlabel 'delta/pi'\nset ylabel 'eta'\nset size ratio -1\n"
      "plot '{data}' skip 2 using 5:6 with points pt 2 notitle\n";
  a.summary = {{"points", pts.size()}};
  return a;
}

fs::path resolve_output(const std::string& requested, const std::string& fallback) {
  fs::path p = requested.empty() ? fs::path(fallback) : fs::path(requested);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
  }
  return p;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

int validate_file(const std::string& path) {
  const auto table = solc::io::parse_any(solc::io::read_file(path));
  solc::io::validate(table);
  std::cerr << "ok: " << path << " (" << table.meta.value("kind", "?") << ", " << table.rows.size() << " rows)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodically poled atom-cavity emission simulator"};
  app.require_subcommand(0, 1);
  std::string validate_path;
  app.add_option("--validate", validate_path, "Parse and check a file written by this tool, then exit");

  Config cfg;
  CommonOptions common;

  auto* map = app.add_subcommand("map", "Emission probability over the (delta, eta) plane");
  add_n_segments(map, cfg);
  add_axis(map, "delta", cfg.delta, "delta/pi");
  add_axis(map, "eta", cfg.eta, "eta");
  map->add_option("--q-max", cfg.q_max, "Branch circles drawn in the plot script")->capture_default_str();
  add_common(map, common);

  auto* traj = app.add_subcommand("trajectory", "Bloch-vector trajectory from the RK4 integrator");
  add_n_segments(traj, cfg);
  traj->add_option("--p", cfg.p, "Branch line index (with --q)");
  traj->add_option("--q", cfg.q, "Branch circle index (with --p)");
  traj->add_option("--eta", cfg.eta_value, "Pulse area per segment");
  traj->add_option("--delta-over-pi", cfg.delta_over_pi, "Detuning per segment in units of pi");
  traj->add_option("--steps", cfg.steps, "RK4 steps per segment")->capture_default_str()->check(CLI::Range(16, 100000000));
  traj->add_flag("--renormalize", cfg.renormalize, "Project back onto the unit sphere after every step");
  add_common(traj, common);

  auto* pass = app.add_subcommand("passband", "Emission versus phi along one branch line");
  add_n_segments(pass, cfg);
  pass->add_option("--p", cfg.p, "Branch line index")->required();
  pass->add_option("--phi-max", cfg.phi_max, "Upper end of the phi axis")->capture_default_str();
  pass->add_option("--samples", cfg.samples, "Samples along phi")->capture_default_str();
  add_common(pass, common);

  auto* mq = app.add_subcommand("mandelq", "Mandel Q over the (n, delta) plane");
  add_n_segments(mq, cfg);
  mq->add_option("--eta0", cfg.eta0, "Pulse area at n = 1")->capture_default_str();
  mq->add_option("--d-cav", cfg.d_cav, "Cavity decay over atomic flux")->capture_default_str();
  add_axis(mq, "n", cfg.n_axis, "mean photon number");
  add_axis(mq, "delta", cfg.mandel_delta, "delta/pi");
  add_common(mq, common);

  auto* four = app.add_subcommand("fourier", "Fourier coefficients of the coupling, or the weak-coupling comparison with --eta");
  add_n_segments(four, cfg);
  four->add_option("--l-max", cfg.l_max, "Largest |l|")->capture_default_str()->check(CLI::PositiveNumber);
  four->add_option("--eta", cfg.eta_value, "Compare the first-order lineshape with exact P_em at this eta");
  add_axis(four, "delta", cfg.fourier_delta, "delta/pi");
  add_common(four, common);

  auto* pm = app.add_subcommand("phasematch", "Points of complete emission");
  add_n_segments(pm, cfg);
  pm->add_option("--q-max", cfg.q_max, "Largest branch circle index")->capture_default_str()->check(CLI::PositiveNumber);
  add_common(pm, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (!validate_path.empty()) return validate_file(validate_path);
    CLI::App* chosen = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (chosen == nullptr) {
      std::cerr << app.help();
      return kExitInvalid;
    }
    const auto format = solc::io::parse_format(common.format);
    if (common.plot_script && format != solc::io::Format::kCsv) {
      throw solc::InvalidParameter("--plot-script needs CSV output");
    }
    solc::SweepOptions sweep{common.threads, solc::parse_backend(common.kernel)};
    solc::resolve_backend(sweep.backend);

    const std::string name = chosen->get_name();
    Artifact art;
    if (name == "map") art = run_map(cfg, common, sweep);
    else if (name == "mandelq") art = run_mandelq(cfg, common, sweep);
    else if (name == "trajectory") art = run_trajectory(cfg, common);
    else if (name == "passband") art = run_passband(cfg, common);
    else if (name == "fourier") art = run_fourier(cfg, common);
    else art = run_phasematch(cfg, common);

    const std::string ext = format == solc::io::Format::kCsv ? ".csv" : ".json";
    const fs::path out = resolve_output(common.out, name + "_N" + std::to_string(cfg.n_segments) + ext);
    solc::io::write_atomic(out, solc::io::render(art.table, format));
    json summary = {{"subcommand", name}, {"out", out.string()}};
    summary.update(art.summary);
    if (common.plot_script) {
      fs::path script = out;
      script.replace_extension(".gp");
      solc::io::write_atomic(script, replace_all(art.plot, "{data}", out.filename().string()));
      summary["plot_script"] = script.string();
    }
    if (common.summary) std::cout << summary.dump() << std::endl;
    return kExitOk;
  } catch (const solc::InternalConsistency& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const solc::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const solc::Error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
