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

// Dynamical (Choi) matrix calculus.
//
// Index convention: D has composite row m * d_in + s and column n * d_in + t,
// and acts as rho'_{mn} = sum_{s,t} D_{ms;nt} rho_{st}. With this layout a
// Kraus operator M contributes vec(M) vec(M)^dagger where vec is the
// row-major vectorization (entry (m, s) at m * d_in + s). Worked example for
// the qubit identity channel: vec(1) = (1, 0, 0, 1), so D is the 4x4 matrix
// with ones at the four corners (0,0), (0,3), (3,0), (3,3).

#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "noncp/linalg.hpp"

namespace noncp {

class ChoiMatrix {
 public:
  /// Validates the shape (d_out * d_in square) and hermiticity within 1e-9
  /// relative; the stored matrix is the exact Hermitian part.
  ChoiMatrix(const Matrix& d, Index d_in, Index d_out);

  const Matrix& matrix() const { return d_; }
  Index d_in() const { return d_in_; }
  Index d_out() const { return d_out_; }
  /// D_{ms;nt}.
  Complex at(Index m, Index s, Index n, Index t) const {
    return d_(m * d_in_ + s, n * d_in_ + t);
  }

 private:
  Matrix d_;
  Index d_in_;
  Index d_out_;
};

/// Generalized Kraus form rho -> sum_a w_a M_a rho M_a^dagger. Weights may be
/// negative for a Hermiticity-preserving map that is not CP.
struct KrausSet {
  std::vector<double> weights;
  std::vector<Matrix> operators;

  std::size_t size() const { return operators.size(); }
  Index d_in() const { return operators.empty() ? 0 : operators.front().cols(); }
  Index d_out() const { return operators.empty() ? 0 : operators.front().rows(); }

  /// Unit-weight set from plain Kraus operators.
  static KrausSet from_operators(std::vector<Matrix> ops);
};

/// Map written as Lambda_plus - Lambda_minus, both parts with positive weights.
struct DifferenceForm {
  KrausSet plus;
  KrausSet minus;
};

/// CP trace-preserving part plus a constant traceless shift xi . sigma.
struct AffineMapForm {
  KrausSet kraus;
  RealVector xi;
};

struct ChannelProperties {
  bool trace_preserving = false;
  bool unital = false;
  bool cp = false;
  double min_eigenvalue = 0.0;
};

Matrix apply_kraus(const KrausSet& k, const Matrix& rho);
Matrix apply_choi(const ChoiMatrix& d, const Matrix& rho);
inline Matrix apply_choi(const ChoiMatrix& d, const DensityMatrix& rho) {
  return apply_choi(d, rho.matrix());
}

ChoiMatrix choi_from_kraus(const KrausSet& k);
/// Eigendecomposition of D: weights are the eigenvalues, operators the
/// reshaped unit eigenvectors. Terms with |lambda| < drop_tol are omitted.
KrausSet kraus_from_choi(const ChoiMatrix& d, double drop_tol = 1e-12);

/// Default CP tolerance: 1e-9 times |tr D|.
double default_channel_tol(const ChoiMatrix& d);
ChannelProperties channel_properties(const ChoiMatrix& d, std::optional<double> tol = {});

/// sum_m D_{ms;mt}, i.e. the input-space operator that must equal 1 for TP.
Matrix output_partial_trace(const ChoiMatrix& d);
/// sum_s D_{ms;ns} = d_in * Phi(1 / d_in).
Matrix input_partial_trace(const ChoiMatrix& d);

DifferenceForm difference_form(const ChoiMatrix& d);
ChoiMatrix choi_from_difference(const DifferenceForm& f);

Matrix apply_affine_form(const AffineMapForm& f, const Matrix& rho);
/// D = sum_a w_a vec(M_a) vec(M_a)^dagger + (xi . sigma) (x) 1_in.
ChoiMatrix choi_of_affine(const AffineMapForm& f);

/// Choi matrix of an arbitrary linear map given as a callable, obtained by
/// propagating the matrix units |s><t|.
ChoiMatrix choi_from_map(const std::function<Matrix(const Matrix&)>& map, Index d_in,
                         Index d_out);

/// Superoperator S with vec_rows(Phi(X)) = S vec_rows(X); a reshuffle of D.
Matrix superoperator(const ChoiMatrix& d);
ChoiMatrix choi_from_superoperator(const Matrix& s, Index d_in, Index d_out);

/// Choi matrix of Phi2 o Phi1.
ChoiMatrix compose(const ChoiMatrix& second, const ChoiMatrix& first);

ChoiMatrix identity_choi(Index d);
ChoiMatrix transpose_choi(Index d);
/// rho -> tr(rho) 1 / d.
ChoiMatrix depolarizing_choi(Index d);
ChoiMatrix unitary_choi(const UnitaryOperator& u);
/// rho -> tr(rho) sigma.
ChoiMatrix preparation_choi(const DensityMatrix& sigma, Index d_in);

/// Stinespring Kraus operators of rho -> tr_B(V (rho (x) omega) V^dagger):
/// M_{mu nu} = sqrt(p_nu) <mu| V |nu> in the eigenbasis of omega.
KrausSet dilation_kraus(const UnitaryOperator& v, const DensityMatrix& omega, BipartiteDims dims);

/// Induced dynamical matrices of a joint unitary V on A (x) B: the system map
/// rho0 -> tr_B V (rho0 (x) omega0) V^dagger and the environment map
/// omega0 -> tr_A V (rho0 (x) omega0) V^dagger.
std::pair<ChoiMatrix, ChoiMatrix> induced_choi_pair(const UnitaryOperator& v,
                                                    const DensityMatrix& omega0,
                                                    const DensityMatrix& rho0);

}  // namespace noncp
