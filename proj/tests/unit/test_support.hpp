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

// Small helpers shared by the unit tests. Reference computations here avoid
// the library routines they are used to check.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "noncp/linalg.hpp"

namespace noncp::testing {

inline Matrix ket_bra(Index d, Index i, Index j) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

// D_{ms;nt} = Phi(|s><t|)_{mn}, written out entry by entry.
inline Matrix brute_force_choi(const std::function<Matrix(const Matrix&)>& phi, Index d_in,
                               Index d_out) {
  Matrix d = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (Index s = 0; s < d_in; ++s) {
    for (Index t = 0; t < d_in; ++t) {
      const Matrix img = phi(ket_bra(d_in, s, t));
      for (Index m = 0; m < d_out; ++m) {
        for (Index n = 0; n < d_out; ++n) d(m * d_in + s, n * d_in + t) = img(m, n);
      }
    }
  }
  return d;
}

inline Eigen::VectorXd sorted_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double smallest_eigenvalue(const Matrix& h) { return sorted_eigenvalues(h)(0); }

// tr_B of an (a b) x (a b) matrix with explicit index loops.
inline Matrix trace_out_b(const Matrix& m, Index a, Index b) {
  Matrix out = Matrix::Zero(a, a);
  for (Index i = 0; i < a; ++i) {
    for (Index j = 0; j < a; ++j) {
      for (Index k = 0; k < b; ++k) out(i, j) += m(i * b + k, j * b + k);
    }
  }
  return out;
}

inline Matrix trace_out_a(const Matrix& m, Index a, Index b) {
  Matrix out = Matrix::Zero(b, b);
  for (Index i = 0; i < b; ++i) {
    for (Index j = 0; j < b; ++j) {
      for (Index k = 0; k < a; ++k) out(i, j) += m(k * b + i, k * b + j);
    }
  }
  return out;
}

inline Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Eigen::VectorXcd phase(es.eigenvalues().size());
  for (Index i = 0; i < phase.size(); ++i) {
    phase(i) = std::exp(std::complex<double>(0.0, -t * es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

inline double sum_abs_eigenvalues(const Matrix& h) { return sorted_eigenvalues(h).cwiseAbs().sum(); }

}  // namespace noncp::testing
