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

#include "noncp/matrix_io.hpp"

#include <fstream>

namespace noncp {

namespace {

Index as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InvalidArgument(std::string("json: ") + what + " must be a non-negative integer");
  }
  return static_cast<Index>(j.get<long long>());
}

}  // namespace

Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"dims", {m.rows(), m.cols()}}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("entries")) {
    throw InvalidArgument("json: matrix needs \"dims\" and \"entries\"");
  }
  const Json& dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 2) throw InvalidArgument("json: dims must be [rows, cols]");
  const Index rows = as_index(dims[0], "rows");
  const Index cols = as_index(dims[1], "cols");
  const Json& e = j.at("entries");
  if (!e.is_array() || static_cast<Index>(e.size()) != rows * cols) {
    throw DimensionError("json: entry count does not match dims");
  }
  Matrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const Json& z = e[static_cast<std::size_t>(k)];
    if (z.is_number()) {
      m(k / cols, k % cols) = z.get<double>();
    } else if (z.is_array() && z.size() == 2) {
      m(k / cols, k % cols) = Complex(z[0].get<double>(), z[1].get<double>());
    } else {
      throw InvalidArgument("json: entries must be numbers or [re, im] pairs");
    }
  }
  return m;
}

Json to_json(const ChoiMatrix& d) {
  Json j = to_json(d.matrix());
  j["d_in"] = d.d_in();
  j["d_out"] = d.d_out();
  return j;
}

ChoiMatrix choi_from_json(const Json& j) {
  const Matrix m = matrix_from_json(j);
  if (!j.contains("d_in") || !j.contains("d_out")) {
    throw InvalidArgument("json: Choi matrix needs \"d_in\" and \"d_out\"");
  }
  return ChoiMatrix(m, as_index(j.at("d_in"), "d_in"), as_index(j.at("d_out"), "d_out"));
}

Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

RealVector real_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("json: expected an array of numbers");
  RealVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
  return v;
}

Json to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

RealMatrix real_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("json: expected an array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw DimensionError("json: ragged matrix");
    }
    for (Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Json to_json(const AssignmentSpec& s) {
  const Index na = s.d_a * s.d_a - 1;
  const Index nb = s.d_b * s.d_b - 1;
  Json g3 = Json::array();
  for (Index i = 0; i < na; ++i) {
    Json row = Json::array();
    for (Index j = 0; j < nb; ++j) {
      Json col = Json::array();
      for (Index k = 0; k < na; ++k) col.push_back(s.G[static_cast<std::size_t>(k)](i, j));
      row.push_back(std::move(col));
    }
    g3.push_back(std::move(row));
  }
  return {{"d_a", s.d_a}, {"d_b", s.d_b}, {"b", to_json(s.b)},
          {"B", to_json(s.B)}, {"g", to_json(s.g)}, {"G", std::move(g3)}};
}

AssignmentSpec assignment_from_json(const Json& j) {
  if (!j.contains("d_a") || !j.contains("d_b")) {
    throw InvalidArgument("json: assignment needs \"d_a\" and \"d_b\"");
  }
  AssignmentSpec s = AssignmentSpec::zeros(as_index(j.at("d_a"), "d_a"), as_index(j.at("d_b"), "d_b"));
  if (j.contains("b")) s.b = real_vector_from_json(j.at("b"));
  if (j.contains("B")) s.B = real_matrix_from_json(j.at("B"));
  if (j.contains("g")) s.g = real_matrix_from_json(j.at("g"));
  if (j.contains("G")) {
    const Json& g3 = j.at("G");
    const Index na = s.d_a * s.d_a - 1;
    const Index nb = s.d_b * s.d_b - 1;
    if (!g3.is_array() || static_cast<Index>(g3.size()) != na) {
      throw DimensionError("json: G must have d_a^2 - 1 rows");
    }
    for (Index i = 0; i < na; ++i) {
      const Json& row = g3[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != nb) throw DimensionError("json: G shape");
      for (Index jj = 0; jj < nb; ++jj) {
        const Json& col = row[static_cast<std::size_t>(jj)];
        if (!col.is_array() || static_cast<Index>(col.size()) != na) throw DimensionError("json: G shape");
        for (Index k = 0; k < na; ++k) {
          s.G[static_cast<std::size_t>(k)](i, jj) = col[static_cast<std::size_t>(k)].get<double>();
        }
      }
    }
  }
  s.validate();
  return s;
}

Json to_json(const ChannelProperties& p) {
  return {{"trace_preserving", p.trace_preserving},
          {"unital", p.unital},
          {"cp", p.cp},
          {"min_eigenvalue", p.min_eigenvalue}};
}

Json to_json(const KrausSet& k) {
  Json ops = Json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    ops.push_back({{"weight", k.weights[i]}, {"operator", to_json(k.operators[i])}});
  }
  return ops;
}

Json to_json(const AccessibilityReport& r) {
  Json j = {{"status", to_string(r.status)},
            {"xi_star", to_json(r.xi_star)},
            {"lambda_min_star", r.lambda_min_star},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"diagnostics", r.diagnostics}};
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  return j;
}

Json to_json(const FitResult& f) {
  Json j = {{"model", to_string(f.model)},
            {"residual", f.residual},
            {"min_eigenvalue", f.min_eigenvalue},
            {"choi", to_json(f.choi)},
            {"note", f.note}};
  j["xi"] = f.xi.size() > 0 ? to_json(f.xi) : Json(nullptr);
  if (f.difference) {
    j["difference"] = {{"plus", to_json(f.difference->plus)},
                       {"minus", to_json(f.difference->minus)}};
  }
  return j;
}

Json to_json(const TomographyRecord& r) {
  Json ins = Json::array();
  Json outs = Json::array();
  for (const auto& m : r.inputs) ins.push_back(to_json(m));
  for (const auto& m : r.outputs) outs.push_back(to_json(m));
  Json j = {{"d_in", r.d_in}, {"d_out", r.d_out}, {"inputs", ins},
            {"outputs", outs}, {"seed", r.seed}};
  j["shots"] = r.shots ? Json(*r.shots) : Json(nullptr);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("cannot parse " + path + ": " + e.what());
  }
}

}  // namespace noncp
