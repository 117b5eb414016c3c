// Copyright 2026 The ptheta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// File emission and table ingestion.  All numeric output uses 17
// significant digits, '.' decimal separator, ',' field separator, and LF
// line endings, so identical runs produce identical bytes.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptheta/errors.hpp"

namespace ptheta {
namespace io {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw ParameterError("csv_table: row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt17(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  write_file(path, csv_table(header, rows));
}

// Reads a two-column numeric CSV (optional header row is skipped).
inline std::pair<std::vector<double>, std::vector<double>> read_two_column_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path.string());
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                           ": expected two comma-separated columns");
    }
    char* end1 = nullptr;
    char* end2 = nullptr;
    const std::string c1 = line.substr(0, comma);
    const std::string c2 = line.substr(comma + 1);
    const double x = std::strtod(c1.c_str(), &end1);
    const double y = std::strtod(c2.c_str(), &end2);
    const bool ok1 = end1 != c1.c_str() && *end1 == '\0';
    const bool ok2 = end2 != c2.c_str() && *end2 == '\0';
    if (!ok1 || !ok2) {
      if (lineno == 1) continue;  // header row
      throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                           ": malformed numeric row");
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) {
    throw ParameterError(path.string() + ": need at least two data rows");
  }
  return {std::move(xs), std::move(ys)};
}

}  // namespace io
}  // namespace ptheta
