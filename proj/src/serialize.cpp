#include "turnband/serialize.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include "turnband/errors.hpp"

namespace turnband {

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const SchoenbergSeq& seq, double tol) {
  nlohmann::json j;
  j["d_sphere"] = seq.d_sphere;
  j["n_max"] = seq.n_max;
  j["residual_mass"] = seq.residual_mass;
  if (seq.tabulated()) {
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index n = 0; n < seq.values.rows(); ++n) {
      values.push_back(vector_json(seq.values.row(n).transpose()));
    }
    j["coeffs_tabulated"] = {{"x_grid", vector_json(seq.x_grid)}, {"values", values}};
    j["coeffs_at_zero"] = vector_json(seq.at_zero);
  } else {
    j["coeffs"] = vector_json(seq.coeffs);
  }
  j["negative_modes"] = seq.negative_modes;
  j["verdict"] = check_coeffs(seq, tol) ? "in class" : "not in class";
  return j;
}

nlohmann::json to_json(const ValidationReport& report) {
  return {{"model", report.model},
          {"space", report.space},
          {"n_points", report.n_points},
          {"seed", report.seed},
          {"tol", report.tol},
          {"min_eig", report.min_eig},
          {"max_eig", report.max_eig},
          {"relative_floor", report.relative_floor},
          {"verdict", report.pass ? "pass" : "fail"}};
}

nlohmann::json to_json(const GridSpec& grid) {
  return {{"x_range", {grid.x_min, grid.x_max}},
          {"y_range", {grid.y_min, grid.y_max}},
          {"nx", grid.nx},
          {"ny", grid.ny},
          {"times", grid.times},
          {"max_dim", grid.max_dim},
          {"ordering", "time,y,x"}};
}

nlohmann::json field_sidecar(const FieldRealization& field, const std::string& model,
                             bool unit_circle) {
  return {{"model", model},
          {"grid", to_json(field.grid)},
          {"seed", field.seed},
          {"jitter_used", field.jitter_used},
          {"n_realizations", field.n_realizations()},
          {"rows_per_realization", field.grid.size()},
          {"rows", static_cast<std::uint64_t>(field.grid.size()) * field.n_realizations()},
          {"columns", {"time", "y", "x", "value", "realization_index"}},
          {"unit_circle", unit_circle}};
}

nlohmann::json to_json(const Checksums& c) {
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << c.fnv1a;
  return {{"rows", c.rows}, {"sum", c.sum}, {"sum_sq", c.sum_sq}, {"fnv1a64", hex.str()}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string field_csv(const FieldRealization& field) {
  const GridSpec& g = field.grid;
  std::string out = "time,y,x,value,realization_index\n";
  std::vector<std::string> xs(g.nx);
  std::vector<std::string> ys(g.ny);
  for (int i = 0; i < g.nx; ++i) xs[i] = format_double(g.x(i));
  for (int j = 0; j < g.ny; ++j) ys[j] = format_double(g.y(j));
  for (int r = 0; r < field.n_realizations(); ++r) {
    const std::string rs = std::to_string(r);
    for (int k = 0; k < static_cast<int>(g.times.size()); ++k) {
      const std::string ts = format_double(g.times[k]);
      for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
          out += ts;
          out += ',';
          out += ys[j];
          out += ',';
          out += xs[i];
          out += ',';
          out += format_double(field.value(k, j, i, r));
          out += ',';
          out += rs;
          out += '\n';
        }
      }
    }
  }
  return out;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty input");
  table.header = split_line(line);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw ParseError("csv: line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(table.header.size()));
    }
    std::vector<std::optional<double>> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      if (cell.empty()) {
        row.emplace_back();
        continue;
      }
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw ParseError("csv: invalid number '" + cell + "' on line " + std::to_string(line_no));
      }
      row.emplace_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Checksums csv_checksums(const std::string& text, const std::string& column) {
  const CsvTable table = parse_csv(text);
  const int col = table.column(column);
  if (col < 0) throw ParseError("csv: no column '" + column + "'");
  Checksums c;
  c.rows = table.rows.size();
  for (const auto& row : table.rows) {
    if (row[col]) {
      c.sum += *row[col];
      c.sum_sq += *row[col] * *row[col];
    }
  }
  c.fnv1a = fnv1a64(text);
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string manifest_path(const std::string& out_path) { return out_path + ".manifest.json"; }

}  // namespace turnband
