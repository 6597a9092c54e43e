#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "turnband/schoenberg.hpp"
#include "turnband/simulate.hpp"
#include "turnband/validate.hpp"

namespace turnband {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal string that parses back to exactly `v` (at most 17
/// significant digits). Non-finite values print as nan / inf / -inf.
std::string format_double(double v);

/// {d_sphere, n_max, residual_mass, coeffs | coeffs_tabulated, negative_modes, verdict}
nlohmann::json to_json(const SchoenbergSeq& seq, double tol = 1e-6);
/// {model, space, n_points, seed, tol, min_eig, max_eig, relative_floor, verdict}
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const GridSpec& grid);

/// Sidecar metadata for a field CSV.
nlohmann::json field_sidecar(const FieldRealization& field, const std::string& model,
                             bool unit_circle);

/// Summary statistics of one numeric CSV column plus a digest of the bytes.
struct Checksums {
  std::uint64_t rows = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t fnv1a = 0;
};

nlohmann::json to_json(const Checksums& c);
std::uint64_t fnv1a64(const std::string& bytes);

/// CSV of (time, y, x, value, realization_index), realizations outermost,
/// then grid order.
std::string field_csv(const FieldRealization& field);

/// Header plus rows; empty cells read as nullopt.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  int column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
/// Checksums of column `column` of CSV text, digest over the raw bytes.
Checksums csv_checksums(const std::string& text, const std::string& column);

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// Path of the manifest that accompanies an output path.
std::string manifest_path(const std::string& out_path);

}  // namespace turnband
