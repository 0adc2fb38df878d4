#pragma once

// Matrix files: JSON {"labels": [...], "dist": [[...], ...]} (an optional
// "provenance" object is ignored on read) or CSV with a header row of n
// labels followed by n rows of n numbers.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ultra/error.hpp"
#include "ultra/function_spec.hpp"
#include "ultra/metric.hpp"

namespace ultra {

inline DistanceMatrix matrix_from_json(const nlohmann::json& j) {
  DistanceMatrix m;
  try {
    if (j.contains("labels")) m.labels = j.at("labels").get<std::vector<std::string>>();
    m.dist = j.at("dist").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("bad matrix JSON: ") + e.what());
  }
  return m;
}

inline nlohmann::json matrix_to_json(const DistanceMatrix& m) {
  return nlohmann::json{{"labels", m.labels}, {"dist", m.dist}};
}

inline nlohmann::json space_to_json(const FiniteSemimetricSpace& s) { return matrix_to_json(s.to_matrix()); }

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r\"");
    const auto e = cell.find_last_not_of(" \t\r\"");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return cells;
}

}  // namespace detail

inline DistanceMatrix matrix_from_csv(std::istream& in) {
  DistanceMatrix m;
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  m.labels = detail::split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    for (const auto& cell : detail::split_csv_line(line)) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw Error(ErrorCode::IoError, "bad CSV number '" + cell + "'");
      row.push_back(v);
    }
    m.dist.push_back(std::move(row));
  }
  return m;
}

inline std::string matrix_to_csv(const DistanceMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.labels.size(); ++i) out += (i ? "," : "") + m.labels[i];
  out += "\n";
  for (const auto& row : m.dist) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + format_number(row[j]);
    out += "\n";
  }
  return out;
}

/// Reads JSON when the first non-blank character is '{', CSV otherwise.
inline DistanceMatrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::IoError, std::string("bad matrix JSON: ") + e.what());
    }
    return matrix_from_json(j);
  }
  std::istringstream in(text);
  return matrix_from_csv(in);
}

inline FiniteSemimetricSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return validate_space(parse_matrix(buf.str()));
}

}  // namespace ultra
