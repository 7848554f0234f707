#include "solc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace solc::io {

using nlohmann::json;

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw InvalidParameter("unknown output format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r' || text.back() == '\t')) text.remove_suffix(1);
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidParameter("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string render_csv(const Table& t) {
  std::string out = "# " + t.meta.dump() + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

json cell_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double cell_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw InvalidParameter("table cell is neither number nor inf marker");
}

}  // namespace

std::string render_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (double v : row) r.push_back(cell_to_json(v));
    rows.push_back(std::move(r));
  }
  json doc = {{"meta", t.meta}, {"columns", t.columns}, {"rows", std::move(rows)}};
  return doc.dump(1) + "\n";
}

std::string render(const Table& t, Format f) { return f == Format::kCsv ? render_csv(t) : render_json(t); }

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  bool have_meta = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      try {
        t.meta = json::parse(line.substr(1));
      } catch (const json::exception& e) {
        throw InvalidParameter(std::string("bad metadata line: ") + e.what());
      }
      have_meta = true;
      continue;
    }
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!have_header) {
      for (auto c : cells) t.columns.emplace_back(c);
      have_header = true;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw InvalidParameter("row has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) row.push_back(parse_double(c));
    t.rows.push_back(std::move(row));
  }
  if (!have_meta) throw InvalidParameter("missing '#' metadata line");
  if (!have_header) throw InvalidParameter("missing header row");
  return t;
}

Table parse_json(const std::string& text) {
  Table t;
  try {
    const json doc = json::parse(text);
    t.meta = doc.at("meta");
    t.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& r : doc.at("rows")) {
      std::vector<double> row;
      for (const auto& c : r) row.push_back(cell_from_json(c));
      if (row.size() != t.columns.size()) throw InvalidParameter("row width does not match columns");
      t.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("malformed JSON table: ") + e.what());
  }
  return t;
}

Table parse_any(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '{') return parse_json(text);
  return parse_csv(text);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json to_json(const AxisSpec& a) {
  return {{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}};
}

AxisSpec axis_from_json(const json& j) {
  AxisSpec a;
  try {
    a.name = j.at("name").get<std::string>();
    a.min = j.at("min").get<double>();
    a.max = j.at("max").get<double>();
    a.count = j.at("count").get<int>();
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("bad axis metadata: ") + e.what());
  }
  a.validate();
  return a;
}

Table to_table(const ScalarGrid& grid) {
  Table t;
  t.meta = {{"kind", "grid"},
            {"quantity", quantity_name(grid.quantity)},
            {"n_segments", grid.meta.n_segments},
            {"x_axis", to_json(grid.x_axis)},
            {"y_axis", to_json(grid.y_axis)},
            {"layout", "row-major, y outer, x inner"},
            {"backend", grid.meta.backend}};
  if (grid.quantity == Quantity::kMandelQ) {
    t.meta["eta0"] = grid.meta.eta0;
    t.meta["d_cav"] = grid.meta.d_cav;
    t.meta["dn_rule"] = grid.meta.dn_rule;
  }
  t.columns = {"x", "y", "value"};
  t.rows.reserve(grid.values.size());
  for (int iy = 0; iy < grid.y_axis.count; ++iy) {
    const double y = grid.y_axis.value(iy);
    for (int ix = 0; ix < grid.x_axis.count; ++ix) t.rows.push_back({grid.x_axis.value(ix), y, grid.at(ix, iy)});
  }
  return t;
}

ScalarGrid grid_from_table(const Table& t) {
  if (t.meta.value("kind", "") != "grid") throw InvalidParameter("table is not a grid");
  ScalarGrid g;
  try {
    g.quantity = parse_quantity(t.meta.at("quantity").get<std::string>());
    g.meta.n_segments = t.meta.at("n_segments").get<int>();
    g.meta.backend = t.meta.value("backend", "");
    g.meta.eta0 = t.meta.value("eta0", 0.0);
    g.meta.d_cav = t.meta.value("d_cav", 0.0);
    g.meta.dn_rule = t.meta.value("dn_rule", "");
    g.x_axis = axis_from_json(t.meta.at("x_axis"));
    g.y_axis = axis_from_json(t.meta.at("y_axis"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("bad grid metadata: ") + e.what());
  }
  const auto expected = static_cast<std::size_t>(g.x_axis.count) * static_cast<std::size_t>(g.y_axis.count);
  if (t.rows.size() != expected) {
    throw InvalidParameter("grid has " + std::to_string(t.rows.size()) + " rows, expected " + std::to_string(expected));
  }
  g.values.reserve(expected);
  for (const auto& r : t.rows) g.values.push_back(r.at(2));
  return g;
}

Table to_table(const Trajectory& traj) {
  Table t;
  t.meta = {{"kind", "trajectory"},
            {"n_segments", traj.params.n_segments},
            {"eta", traj.params.eta},
            {"delta_over_pi", traj.params.delta / kPi},
            {"steps_per_segment", traj.steps_per_segment},
            {"renormalized", traj.renormalized},
            {"max_norm_drift", traj.max_norm_drift()}};
  t.columns = {"t", "segment", "x", "y", "z", "norm_drift"};
  t.rows.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    t.rows.push_back({s.t, static_cast<double>(s.segment), s.r.x, s.r.y, s.r.z, s.r.norm() - 1.0});
  }
  return t;
}

Table to_table(const PassbandSpectrum& s, double fwhm) {
  Table t;
  t.meta = {{"kind", "passband"}, {"n_segments", s.n_segments}, {"p", s.p}, {"theta", s.theta}};
  if (std::isfinite(fwhm)) t.meta["fwhm_q1"] = fwhm;
  t.columns = {"phi", "eta", "delta_over_pi", "p_em"};
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double phi = s.phi_axis[i];
    t.rows.push_back({phi, phi * std::sin(s.theta), phi * std::cos(s.theta) / kPi, s.values[i]});
  }
  return t;
}

Table to_table(int n_segments, int q_max, const std::vector<PhaseMatchPoint>& points) {
  Table t;
  t.meta = {{"kind", "phasematch"}, {"n_segments", n_segments}, {"q_max", q_max}, {"count", points.size()}};
  t.columns = {"p", "q", "sign", "theta", "delta_over_pi", "eta"};
  for (const auto& p : points) {
    t.rows.push_back({static_cast<double>(p.p), static_cast<double>(p.q), static_cast<double>(p.sign), p.theta,
                      p.delta_opt / kPi, p.eta_opt});
  }
  return t;
}

Table to_table(const FourierCoefficients& c, int l_max) {
  Table t;
  double parseval = 0.0;
  for (const auto& [l, g] : c.coefficients) parseval += std::norm(g);
  t.meta = {{"kind", "fourier"}, {"n_segments", c.n_segments}, {"l_max", l_max}, {"units", "g0"},
            {"parseval_sum", parseval}};
  t.columns = {"l", "re", "im", "abs2"};
  for (const auto& [l, g] : c.coefficients) t.rows.push_back({static_cast<double>(l), g.real(), g.imag(), std::norm(g)});
  return t;
}

Table to_table(const WeakCouplingPrediction& w) {
  Table t;
  t.meta = {{"kind", "weak_coupling"},
            {"n_segments", w.n_segments},
            {"eta", w.eta},
            {"correlation", w.correlation},
            {"warnings", w.warnings}};
  t.columns = {"delta_over_pi", "s", "on_comb", "prediction", "exact"};
  for (std::size_t i = 0; i < w.delta.size(); ++i) {
    t.rows.push_back({w.delta[i] / kPi, static_cast<double>(w.comb_index[i]), w.on_comb[i] ? 1.0 : 0.0,
                      w.prediction[i], w.exact[i]});
  }
  return t;
}

json to_json(const BranchGeometry& g) {
  json lines = json::array();
  for (const auto& l : g.lines) {
    lines.push_back({{"p", l.p}, {"theta", l.theta}, {"visible", l.visible},
                     {"from", {l.x0, l.y0}}, {"to", {l.x1, l.y1}}});
  }
  json circles = json::array();
  for (const auto& c : g.circles) circles.push_back({{"q", c.q}, {"radius", c.radius}});
  json points = json::array();
  for (const auto& i : g.intersections) {
    points.push_back({{"p", i.point.p}, {"q", i.point.q}, {"sign", i.point.sign},
                      {"delta_over_pi", i.point.delta_opt / kPi}, {"eta", i.point.eta_opt},
                      {"in_bounds", i.in_bounds}});
  }
  return {{"n_segments", g.n_segments}, {"lines", lines}, {"circles", circles}, {"intersections", points}};
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter("validation failed: " + what);
}

void require_columns(const Table& t, std::initializer_list<const char*> names) {
  require(t.columns.size() == names.size(), "unexpected column count");
  std::size_t i = 0;
  for (const char* n : names) require(t.columns[i++] == n, std::string("expected column '") + n + "'");
}

void validate_grid(const Table& t) {
  require_columns(t, {"x", "y", "value"});
  const ScalarGrid g = grid_from_table(t);
  std::size_t k = 0;
  for (int iy = 0; iy < g.y_axis.count; ++iy) {
    for (int ix = 0; ix < g.x_axis.count; ++ix, ++k) {
      const auto& r = t.rows[k];
      require(r[0] == g.x_axis.value(ix) && r[1] == g.y_axis.value(iy), "row " + std::to_string(k) + " off the axes");
      if (g.quantity == Quantity::kEmission) {
        require(r[2] >= 0.0 && r[2] <= 1.0, "emission value outside [0, 1]");
      } else {
        require(!std::isnan(r[2]), "NaN in mandel_q grid");
      }
    }
  }
}

void validate_trajectory(const Table& t) {
  require_columns(t, {"t", "segment", "x", "y", "z", "norm_drift"});
  require(!t.rows.empty(), "empty trajectory");
  const int n = t.meta.at("n_segments").get<int>();
  require(t.rows.front()[0] == 0.0, "trajectory must start at t = 0");
  require(t.rows.back()[0] == n, "trajectory must end at t = N");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    if (i > 0) require(r[0] > t.rows[i - 1][0], "times not strictly increasing");
    require(r[1] == std::ceil(r[0]), "segment index != ceil(t)");
  }
}

void validate_phasematch(const Table& t) {
  require_columns(t, {"p", "q", "sign", "theta", "delta_over_pi", "eta"});
  const int n = t.meta.at("n_segments").get<int>();
  const int q_max = t.meta.at("q_max").get<int>();
  require(t.rows.size() == static_cast<std::size_t>(2 * n * q_max), "point count != 2 N q_max");
  for (const auto& r : t.rows) {
    const double phi = std::hypot(r[4] * kPi, r[5]);
    require(std::fabs(phi - (2.0 * r[1] - 1.0) * kPi) < 1e-12 * (1.0 + phi), "point off its branch circle");
    require(std::fabs(r[3] - (r[0] - 0.5) * kPi / n) < 1e-12, "theta off its branch line");
  }
}

void validate_unit_interval(const Table& t, std::size_t col, const char* what) {
  for (const auto& r : t.rows) require(r[col] >= 0.0 && r[col] <= 1.0, std::string(what) + " outside [0, 1]");
}

}  // namespace

void validate(const Table& t) {
  const std::string kind = t.meta.value("kind", "");
  try {
    if (kind == "grid") {
      validate_grid(t);
    } else if (kind == "trajectory") {
      validate_trajectory(t);
    } else if (kind == "phasematch") {
      validate_phasematch(t);
    } else if (kind == "passband") {
      require_columns(t, {"phi", "eta", "delta_over_pi", "p_em"});
      validate_unit_interval(t, 3, "p_em");
    } else if (kind == "fourier") {
      require_columns(t, {"l", "re", "im", "abs2"});
    } else if (kind == "weak_coupling") {
      require_columns(t, {"delta_over_pi", "s", "on_comb", "prediction", "exact"});
      validate_unit_interval(t, 3, "prediction");
      validate_unit_interval(t, 4, "exact");
    } else {
      throw InvalidParameter("unknown table kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("bad metadata: ") + e.what());
  }
}

}  // namespace solc::io
