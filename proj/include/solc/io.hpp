#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "solc/analysis.hpp"
#include "solc/bloch.hpp"
#include "solc/sweep.hpp"

namespace solc::io {

enum class Format { kCsv, kJson };

Format parse_format(std::string_view name);

// Every artifact is a table: JSON metadata, named columns, numeric rows.
//
// CSV layout:
//   # {"kind": ..., ...}        one metadata line
//   col_a,col_b,...             header row
//   1.2345678901234567,...      one line per row, 17 significant digits
//
// JSON layout: {"meta": {...}, "columns": [...], "rows": [[...], ...]}.
// Infinite values are written as inf / -inf (strings in JSON).
struct Table {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_double(double v);
double parse_double(std::string_view text);

std::string render(const Table& t, Format f);
std::string render_csv(const Table& t);
std::string render_json(const Table& t);

/// Throws InvalidParameter on malformed input.
Table parse_csv(const std::string& text);
Table parse_json(const std::string& text);
/// Detects the format from the first non-space character.
Table parse_any(const std::string& text);

/// Writes to a sibling temporary file, then renames. Throws IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

Table to_table(const ScalarGrid& grid);
ScalarGrid grid_from_table(const Table& t);
Table to_table(const Trajectory& traj);
Table to_table(const PassbandSpectrum& s, double fwhm);
Table to_table(int n_segments, int q_max, const std::vector<PhaseMatchPoint>& points);
Table to_table(const FourierCoefficients& c, int l_max);
Table to_table(const WeakCouplingPrediction& w);

nlohmann::json to_json(const AxisSpec& a);
AxisSpec axis_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BranchGeometry& g);

/// Structural checks for a table produced by this tool (row counts, axis
/// ordering, ranges, monotone time). Throws InvalidParameter on failure.
void validate(const Table& t);

}  // namespace solc::io
