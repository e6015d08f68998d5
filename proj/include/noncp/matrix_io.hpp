// Copyright 2026 The noncp Authors
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

// JSON encodings shared by the command-line tool and the tests.
//
// Complex matrices: {"dims": [rows, cols], "entries": [[re, im], ...]} with
// entries in row-major order. Choi matrices add "d_in" and "d_out".
#pragma once

#include <string>

#include "json.hpp"
#include "noncp/accessibility.hpp"
#include "noncp/fano.hpp"
#include "noncp/tomography.hpp"

namespace noncp {

using Json = nlohmann::json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const ChoiMatrix& d);
ChoiMatrix choi_from_json(const Json& j);

Json to_json(const RealVector& v);
RealVector real_vector_from_json(const Json& j);
Json to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const Json& j);

/// {"d_a", "d_b", "b": [...], "B": [[...]], "g": [[...]], "G": [[[...]]]}
/// with G[i][j][k] = G_ijk. Missing coefficient blocks default to zero.
Json to_json(const AssignmentSpec& s);
AssignmentSpec assignment_from_json(const Json& j);

Json to_json(const ChannelProperties& p);
Json to_json(const AccessibilityReport& r);
Json to_json(const KrausSet& k);
Json to_json(const FitResult& f);
Json to_json(const TomographyRecord& r);

/// Reads a whole file; throws InvalidArgument when it cannot be opened or
/// parsed.
Json read_json_file(const std::string& path);

}  // namespace noncp
