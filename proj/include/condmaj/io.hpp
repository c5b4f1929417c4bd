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

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "condmaj/probcore.hpp"
#include "condmaj/quantum.hpp"

// File formats and the deterministic JSON writer used by the tool.
namespace condmaj::io {

using nlohmann::json;

// {"rows": n, "cols": l, "data": [row-major]}.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& where = {});
// Parses JSON or CSV (one row per line) by content.
Matrix parse_matrix_text(const std::string& text, const std::string& where = {});

// {"probs": [...], "states": [[[re, im], ... d*d row-major], ...]}.
json cq_state_to_json(const CQState& s);
CQState cq_state_from_json(const json& j, const std::string& where = {});

json cvector_to_json(const CVector& v);
CVector cvector_from_json(const json& j, const std::string& where = {});
// A list of complex vectors.
std::vector<CVector> vectors_from_json(const json& j, const std::string& where = {});
// A plain array or {"data": [...]}.
Vector real_vector_from_json(const json& j, const std::string& where = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
std::string sha256_hex(const std::string& bytes);

// Serializes with sorted keys and every float printed with 17 significant
// digits, so the output is a pure function of the value.
std::string dump(const json& j, bool pretty);

}  // namespace condmaj::io
