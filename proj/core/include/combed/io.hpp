#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "combed/classify.hpp"
#include "combed/grid.hpp"
#include "combed/spectrum.hpp"

namespace combed {

/// %.17g, which round-trips every double; non-finite values become "null".
std::string format_number(double value);

/// {"a0", "n", "terms": [{"k", "a", "b"}], "generator": {"name", "params"}}.
/// The generator tag is written only when it describes the stored values.
std::string write_coefficients_json(const CoefficientSequence& c);
/// Parse errors raise ParseError; a generator tag is rehydrated from the catalog.
CoefficientSequence read_coefficients_json(std::string_view text);

/// `theta,value,defined` rows (first column `x` when the grid has a domain).
std::string write_grid_csv(const GridFunction& grid);
/// {"singular_points": [{"theta"|"x", "kind"}], "note", "domain": [a, b]};
/// positions are x values when the grid has a domain.
std::string write_grid_sidecar(const GridFunction& grid);
/// `domain`, when given, takes precedence over the sidecar's.
GridFunction read_grid(std::string_view csv, std::optional<std::string_view> sidecar,
                       std::optional<std::array<double, 2>> domain = std::nullopt);

std::string write_report_json(const ClassificationReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Sidecar path for a grid CSV: `<csv>.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);
/// Reads a grid CSV and its sidecar when one exists.
GridFunction load_grid(const std::filesystem::path& csv,
                       std::optional<std::array<double, 2>> domain = std::nullopt);
void save_grid(const GridFunction& grid, const std::filesystem::path& csv);

}  // namespace combed
