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

#include "doctest.h"
#include "noncp/matrix_io.hpp"

using namespace noncp;

TEST_CASE("matrix JSON round trip") {
  Rng rng(1);
  const Matrix m = random_ginibre(2, 3, rng);
  const Json j = to_json(m);
  CHECK(j["dims"][0] == 2);
  CHECK(j["dims"][1] == 3);
  CHECK(j["entries"].size() == 6);
  CHECK(max_abs(matrix_from_json(Json::parse(j.dump())) - m) == 0.0);
}

TEST_CASE("real entries are accepted") {
  const Json j = Json::parse(R"({"dims": [2, 2], "entries": [1, 0, 0, [0, 1]]})");
  const Matrix m = matrix_from_json(j);
  CHECK(m(0, 0) == Complex(1.0, 0.0));
  CHECK(m(1, 1) == Complex(0.0, 1.0));
}

TEST_CASE("Choi JSON round trip") {
  const ChoiMatrix t = transpose_choi(2);
  const ChoiMatrix back = choi_from_json(to_json(t));
  CHECK(back.d_in() == 2);
  CHECK(back.d_out() == 2);
  CHECK(max_abs(back.matrix() - t.matrix()) == 0.0);
}

TEST_CASE("assignment JSON round trip") {
  AssignmentSpec s = AssignmentSpec::zeros(2, 3);
  s.b(1) = 0.2;
  s.B(0, 2) = -0.1;
  s.g(2, 5) = 0.3;
  s.G[1](0, 4) = 0.05;
  const AssignmentSpec back = assignment_from_json(Json::parse(to_json(s).dump()));
  CHECK(back.b(1) == 0.2);
  CHECK(back.B(0, 2) == -0.1);
  CHECK(back.g(2, 5) == 0.3);
  CHECK(back.G[1](0, 4) == 0.05);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dims": [2, 2], "entries": [1, 2]})")),
                  DimensionError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"entries": []})")), InvalidArgument);
  CHECK_THROWS_AS(choi_from_json(to_json(identity(4))), InvalidArgument);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InvalidArgument);
}

TEST_CASE("accessibility report serializes status and certificate") {
  const Json j = to_json(linear_accessibility_test(identity_choi(2)));
  CHECK(j["status"] == "accessible");
  CHECK(j["certificate"].is_array());
  const Json k = to_json(linear_accessibility_test(transpose_choi(2)));
  CHECK(k["status"] == "not-accessible");
  CHECK(k["certificate"].is_null());
}
