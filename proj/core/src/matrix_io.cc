// Copyright 2026 The amgae Authors.
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

#include "amgae/matrix_io.h"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "amgae/parse_error.h"

namespace amgae {
namespace {

bool ParseDouble(const std::string& s, double* out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void WriteRows(std::ostream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << '\t';
      out << fmt::format("{:.17g}", m(i, j));
    }
    out << '\n';
  }
}

std::vector<double> ReadRow(const std::string& line, const std::string& file, std::size_t lineno) {
  std::vector<double> row;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    if (!ParseDouble(token, &v)) throw ParseError(file, lineno, "bad value '" + token + "'");
    row.push_back(v);
  }
  return row;
}

}  // namespace

void WriteMatrix(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  WriteRows(out, m);
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

Matrix ReadMatrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(ReadRow(line, path.string(), lineno));
    if (rows.back().size() != rows.front().size()) {
      throw ParseError(path.string(), lineno,
                       fmt::format("row has {} values, expected {}", rows.back().size(),
                                   rows.front().size()));
    }
  }
  Matrix m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

void WriteParameters(const std::vector<ad::Parameter>& params, const std::filesystem::path& path) {
  std::ofstream out(path);
  for (const ad::Parameter& p : params) {
    out << p.name() << ' ' << p.value().rows() << ' ' << p.value().cols() << '\n';
    WriteRows(out, p.value());
  }
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void ReadParameters(std::vector<ad::Parameter>& params, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::map<std::string, Matrix> loaded;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string name;
    Index rows = 0;
    Index cols = 0;
    if (!(head >> name >> rows >> cols) || rows < 0 || cols < 0) {
      throw ParseError(path.string(), lineno, "expected 'name rows cols'");
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      if (!std::getline(in, line)) throw ParseError(path.string(), lineno, "truncated matrix");
      ++lineno;
      const auto row = ReadRow(line, path.string(), lineno);
      if (static_cast<Index>(row.size()) != cols) {
        throw ParseError(path.string(), lineno, "row width does not match header");
      }
      for (Index j = 0; j < cols; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
    }
    loaded[name] = std::move(m);
  }
  for (ad::Parameter& p : params) {
    const auto it = loaded.find(p.name());
    if (it == loaded.end()) {
      throw std::invalid_argument("parameter '" + p.name() + "' missing from " + path.string());
    }
    if (it->second.rows() != p.value().rows() || it->second.cols() != p.value().cols()) {
      throw std::invalid_argument("parameter '" + p.name() + "' has another shape in " +
                                  path.string());
    }
    p.mutable_value() = it->second;
  }
}

}  // namespace amgae
