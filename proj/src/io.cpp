// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "gdapep/errors.hpp"
#include "json.hpp"

namespace gdapep {

namespace {

using nlohmann::json;

Matrix matrix_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.empty())
    throw ParseError(std::string(name) + " must be a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array())
      throw ParseError(std::string(name) + " rows must be arrays");
    if (r == 0) cols = row.size();
    if (row.size() != cols || cols == 0)
      throw ParseError(std::string(name) + " rows must have equal length");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const json& v = j[r][c];
      if (!v.is_number())
        throw ParseError(std::string(name) + " entries must be numbers");
      m(static_cast<int>(r), static_cast<int>(c)) = v.get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw DomainError("double formatting failed");
  return std::string(buf, ptr);
}

QuadraticSaddle parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance JSON must be an object");
  for (const char* key : {"A", "B", "C"}) {
    if (!j.contains(key))
      throw ParseError(std::string("instance JSON missing \"") + key + "\"");
  }
  return QuadraticSaddle(matrix_from_json(j["A"], "A"),
                         matrix_from_json(j["B"], "B"),
                         matrix_from_json(j["C"], "C"));
}

QuadraticSaddle load_instance_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::string instance_to_json(const QuadraticSaddle& inst) {
  json j;
  j["A"] = matrix_to_json(inst.A());
  j["B"] = matrix_to_json(inst.B());
  j["C"] = matrix_to_json(inst.C());
  return j.dump(2) + "\n";
}

void save_instance_json(const QuadraticSaddle& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write instance file: " + path);
  out << instance_to_json(inst);
  if (!out) throw ParseError("short write to instance file: " + path);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "k,dist_sq,ratio\n";
  for (std::size_t k = 0; k < traj.distances_sq.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += format_double(traj.distances_sq[k]);
    out += ',';
    if (k > 0 && traj.distances_sq[k - 1] != 0.0)
      out += format_double(traj.distances_sq[k] / traj.distances_sq[k - 1]);
    out += '\n';
  }
  return out;
}

}  // namespace gdapep
