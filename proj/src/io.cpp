// Copyright 2026 The condmaj Authors
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

#include "condmaj/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "condmaj/error.hpp"

namespace condmaj::io {

namespace {

[[noreturn]] void bad(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::InvalidInput, message, where);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad("expected a number", where);
  return j.get<double>();
}

Complex complex_entry(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], where), number(j[1], where)};
  bad("expected a complex number as [re, im]", where);
}

std::string at(const std::string& where, const std::string& suffix) {
  return where.empty() ? suffix : where + ":" + suffix;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    bad("matrix must be an object with rows, cols and data", where);
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer() || !j["data"].is_array()) {
    bad("rows and cols must be integers and data an array", where);
  }
  const auto rows = j["rows"].get<long long>();
  const auto cols = j["cols"].get<long long>();
  if (rows <= 0 || cols <= 0) bad("matrix dimensions must be positive", where);
  if (j["data"].size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(ErrorCode::ShapeError,
                "data has " + std::to_string(j["data"].size()) + " entries, expected " +
                    std::to_string(rows * cols),
                where);
  }
  Matrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long k = 0; k < cols; ++k) {
      m(i, k) = number(j["data"][static_cast<std::size_t>(i * cols + k)],
                       at(where, "data[" + std::to_string(i * cols + k) + "]"));
    }
  }
  return m;
}

Matrix parse_matrix_text(const std::string& text, const std::string& where) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) bad("empty matrix file", where);
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      bad(std::string("malformed JSON: ") + e.what(), where);
    }
    return matrix_from_json(j, where);
  }
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        bad("cannot read '" + cell + "' as a number", at(where, "line " + std::to_string(lineno)));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ShapeError, "ragged CSV row", at(where, "line " + std::to_string(lineno)));
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return m;
}

json cvector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

CVector cvector_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad("expected a non-empty list of complex entries", where);
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_entry(j[i], at(where, "[" + std::to_string(i) + "]"));
  }
  return v;
}

std::vector<CVector> vectors_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad("expected a list of vectors", where);
  std::vector<CVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(cvector_from_json(j[i], at(where, "vector " + std::to_string(i))));
  }
  return out;
}

Vector real_vector_from_json(const json& j, const std::string& where) {
  const json& arr = j.is_object() && j.contains("data") ? j["data"] : j;
  if (!arr.is_array() || arr.empty()) bad("expected a non-empty array of numbers", where);
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(arr[i], at(where, "[" + std::to_string(i) + "]"));
  }
  return v;
}

json cq_state_to_json(const CQState& s) {
  json probs = json::array(), states = json::array();
  for (std::size_t x = 0; x < s.size(); ++x) {
    probs.push_back(s.probs()[x]);
    json entries = json::array();
    const CMatrix& m = s.states()[x].matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back({m(i, k).real(), m(i, k).imag()});
    }
    states.push_back(entries);
  }
  return json{{"probs", probs}, {"states", states}};
}

CQState cq_state_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("probs") || !j.contains("states")) {
    bad("CQ state must be an object with probs and states", where);
  }
  const Vector probs = real_vector_from_json(j["probs"], at(where, "probs"));
  const json& states = j["states"];
  if (!states.is_array() || states.size() != static_cast<std::size_t>(probs.size())) {
    throw Error(ErrorCode::DimensionMismatch, "need one state per probability", at(where, "states"));
  }
  std::vector<DensityMatrix> rhos;
  for (std::size_t x = 0; x < states.size(); ++x) {
    const std::string loc = at(where, "states[" + std::to_string(x) + "]");
    const CVector flat = cvector_from_json(states[x], loc);
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (d * d != flat.size()) throw Error(ErrorCode::ShapeError, "state is not a square matrix", loc);
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index k = 0; k < d; ++k) m(i, k) = flat(i * d + k);
    }
    try {
      rhos.emplace_back(std::move(m));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), loc);
    }
  }
  try {
    return CQState(ProbVector(probs), std::move(rhos));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), e.location().empty() ? where : at(where, e.location()));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write file", path);
  out << contents;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

namespace {

void write(std::string& out, const json& j, bool pretty, int depth) {
  const auto newline = [&](int d) {
    if (!pretty) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map keeps keys sorted
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += json(key).dump();
        out += pretty ? ": " : ":";
        write(out, value, pretty, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out.push_back(',');
        newline(depth + 1);
        write(out, j[i], pretty, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j, bool pretty) {
  std::string out;
  write(out, j, pretty, 0);
  return out;
}

}  // namespace condmaj::io
