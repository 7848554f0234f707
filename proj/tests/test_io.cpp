#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "doctest.h"
#include "solc/io.hpp"

using namespace solc;
namespace fs = std::filesystem;

namespace {

ScalarGrid small_grid() {
  return scan_emission(5, AxisSpec{"delta_over_pi", -4.0, 4.0, 17}, AxisSpec{"eta", 0.0, 4 * kPi, 13});
}

fs::path scratch(const std::string& leaf) {
  const fs::path d = fs::temp_directory_path() / "solc_io_test";
  fs::create_directories(d);
  return d / leaf;
}

}  // namespace

TEST_CASE("format_double round trips at 17 digits") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng) * 300));
    REQUIRE(io::parse_double(io::format_double(v)) == v);
  }
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::isinf(io::parse_double("-inf")));
  CHECK_THROWS_AS(io::parse_double("1.0x"), InvalidParameter);
  CHECK_THROWS_AS(io::parse_double(""), InvalidParameter);
}

TEST_CASE("grid survives CSV and JSON round trips exactly") {
  const auto g = small_grid();
  for (auto f : {io::Format::kCsv, io::Format::kJson}) {
    const std::string text = io::render(io::to_table(g), f);
    const auto back = io::grid_from_table(io::parse_any(text));
    CHECK(back.x_axis.count == g.x_axis.count);
    CHECK(back.y_axis.max == g.y_axis.max);
    REQUIRE(back.values.size() == g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i) REQUIRE(back.values[i] == g.values[i]);
    CHECK(io::render(io::parse_any(text), f) == text);
  }
}

TEST_CASE("CSV layout") {
  const std::string text = io::render_csv(io::to_table(small_grid()));
  CHECK(text.rfind("# {", 0) == 0);
  const auto nl = text.find('\n');
  CHECK(text.substr(nl + 1, 12) == "x,y,value\n-4");
}

TEST_CASE("infinite Mandel values are written as markers") {
  ScalarGrid g;
  g.x_axis = {"n", 1.0, 2.0, 2};
  g.y_axis = {"delta_over_pi", 0.0, 1.0, 2};
  g.quantity = Quantity::kMandelQ;
  g.values = {std::numeric_limits<double>::infinity(), -0.5, -std::numeric_limits<double>::infinity(), 0.25};
  for (auto f : {io::Format::kCsv, io::Format::kJson}) {
    const std::string text = io::render(io::to_table(g), f);
    CHECK(text.find("-inf") != std::string::npos);
    const auto t = io::parse_any(text);
    io::validate(t);
    const auto back = io::grid_from_table(t);
    CHECK(back.values[0] == std::numeric_limits<double>::infinity());
    CHECK(back.values[2] == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("validate catches damaged tables") {
  auto t = io::to_table(small_grid());
  io::validate(t);

  auto missing = t;
  missing.rows.pop_back();
  CHECK_THROWS_AS(io::validate(missing), InvalidParameter);

  auto shifted = t;
  shifted.rows[3][0] += 1e-9;
  CHECK_THROWS_AS(io::validate(shifted), InvalidParameter);

  auto big = t;
  big.rows[5][2] = 1.5;
  CHECK_THROWS_AS(io::validate(big), InvalidParameter);

  auto unknown = t;
  unknown.meta["kind"] = "mystery";
  CHECK_THROWS_AS(io::validate(unknown), InvalidParameter);

  auto traj = io::to_table(integrate_trajectory(ReducedParams(1.0, 0.5, 3), 16));
  io::validate(traj);
  traj.rows.back()[0] = 2.5;
  CHECK_THROWS_AS(io::validate(traj), InvalidParameter);

  auto pm = io::to_table(4, 2, phase_match_points(4, 2));
  io::validate(pm);
  pm.rows[2][5] *= 1.001;
  CHECK_THROWS_AS(io::validate(pm), InvalidParameter);
  pm.rows.pop_back();
  CHECK_THROWS_AS(io::validate(pm), InvalidParameter);
}

TEST_CASE("malformed text is rejected") {
  CHECK_THROWS_AS(io::parse_csv("x,y\n1,2\n"), InvalidParameter);
  CHECK_THROWS_AS(io::parse_csv("# {}\nx,y\n1\n"), InvalidParameter);
  CHECK_THROWS_AS(io::parse_json("{\"meta\": {}, \"columns\": [\"a\"], \"rows\": [[1, 2]]}"), InvalidParameter);
  CHECK_THROWS_AS(io::parse_json("not json"), InvalidParameter);
  CHECK_THROWS_AS(io::parse_format("xml"), InvalidParameter);
}

TEST_CASE("atomic writes") {
  const auto p = scratch("grid.csv");
  const std::string text = io::render_csv(io::to_table(small_grid()));
  io::write_atomic(p, text);
  CHECK(io::read_file(p) == text);
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
  io::write_atomic(p, "short\n");
  CHECK(io::read_file(p) == "short\n");
  CHECK_THROWS_AS(io::write_atomic("/nonexistent_dir_solc/x/out.csv", text), IoError);
  CHECK_THROWS_AS(io::read_file("/nonexistent_dir_solc/x/in.csv"), IoError);
}

TEST_CASE("every table kind renders and validates") {
  const auto spec = passband(4, 1, 2 * kPi, 201);
  std::vector<io::Table> tables = {
      io::to_table(spec, passband_fwhm(spec, kPi)),
      io::to_table(fourier_coefficients(6, 8), 8),
      io::to_table(weak_coupling_prediction(8, 0.1, {-1.0, 0.0, 1.0, 2.0})),
      io::to_table(integrate_trajectory(ReducedParams(2.0, 1.0, 2), 32)),
      io::to_table(3, 1, phase_match_points(3, 1)),
  };
  for (const auto& t : tables) {
    io::validate(t);
    for (auto f : {io::Format::kCsv, io::Format::kJson}) {
      const auto back = io::parse_any(io::render(t, f));
      io::validate(back);
      CHECK(back.rows == t.rows);
      CHECK(back.meta == t.meta);
    }
  }
}
