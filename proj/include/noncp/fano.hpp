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

// Fano-form coefficients of bipartite operators and assignment (extension)
// maps rho -> tau_AB with tr_B tau_AB = rho.
//
// Fano form:
//   tau = (1 + sum_i alpha_i s_i (x) 1 + sum_j beta_j 1 (x) s_j
//            + sum_ij gamma_ij s_i (x) s_j) / (d_A d_B)
// with generators normalized tr(s_i s_j) = 2 delta_ij. Coefficients are
// extracted with a factor d/2 (alpha_i = (d_A/2) tr((s_i (x) 1) tau), and so
// on); for qubits this is the plain projection alpha_i = tr(s_i rho).

#pragma once

#include <functional>
#include <vector>

#include "noncp/choi.hpp"
#include "noncp/linalg.hpp"

namespace noncp {

struct FanoState {
  Index d_a = 0;
  Index d_b = 0;
  RealVector alpha;  // d_A^2 - 1
  RealVector beta;   // d_B^2 - 1
  RealMatrix gamma;  // (d_A^2 - 1) x (d_B^2 - 1)
};

/// Gamma_ij = (gamma_ij - alpha_i beta_j) / (d_A d_B).
struct CorrelationTensor {
  RealMatrix gamma;

  /// g_ij = d_A d_B Gamma_ij.
  RealMatrix scaled(Index d_a, Index d_b) const {
    return gamma * static_cast<double>(d_a * d_b);
  }
};

FanoState to_fano(const Matrix& tau, BipartiteDims dims);
Matrix from_fano(const FanoState& f);
CorrelationTensor correlation_tensor(const FanoState& f);

/// Affine assignment:
///   beta_j(alpha)   = b_j + sum_k B_jk alpha_k
///   gamma_ij(alpha) = g_ij + sum_k G_ijk alpha_k
/// G is stored as one (d_A^2-1) x (d_B^2-1) slice per k: G[k](i, j) = G_ijk.
struct AssignmentSpec {
  Index d_a = 0;
  Index d_b = 0;
  RealVector b;
  RealMatrix B;
  RealMatrix g;
  std::vector<RealMatrix> G;

  /// Zero-initialized spec of the right shape.
  static AssignmentSpec zeros(Index d_a, Index d_b);
  /// rho -> rho (x) omega0: b = beta(omega0), G_ijk = delta_ik b_j.
  static AssignmentSpec product(Index d_a, const DensityMatrix& omega0);

  /// Throws DimensionError if the coefficient shapes disagree with d_a, d_b.
  void validate() const;
  RealVector beta(const RealVector& alpha) const;
  RealMatrix gamma(const RealVector& alpha) const;
};

/// Nonlinear weak-correlation perturbation of an affine assignment:
///   beta = beta_lin + eps * beta1(alpha), gamma = gamma_lin + eps * gamma1(alpha).
/// beta1 and gamma1 are caller supplied and must be side-effect free.
struct PerturbedAssignment {
  AssignmentSpec base;
  double epsilon = 0.0;
  std::function<RealVector(const RealVector&)> beta1;
  std::function<RealMatrix(const RealVector&)> gamma1;
};

/// tau together with its positivity status; non-positive outputs are
/// returned, not rejected.
struct AssignmentOutput {
  Matrix tau;
  bool positive = false;
  double min_eigenvalue = 0.0;
};

AssignmentOutput apply_assignment(const AssignmentSpec& spec, const Matrix& rho);
AssignmentOutput apply_assignment(const PerturbedAssignment& spec, const Matrix& rho);

/// tau = (1 + sum_i alpha_i s_i (x) 1 + a sum_i s_i (x) s_i) / 4.
Matrix toy_extension(const RealVector& alpha, double a);
/// Assignment spec reproducing toy_extension: b = 0, B = 0, g = a 1, G = 0.
AssignmentSpec toy_assignment_spec(double a);
/// a_max(|alpha|) = (sqrt(4 - 3|alpha|^2) - 1) / 3 for the a >= 0 branch.
double toy_positivity_max(double alpha_norm);
/// Radius sqrt((1 + a)(1 - 3a)) of the positivity ball for 0 <= a <= 1/3.
double toy_domain_radius(double a);

struct EffectiveAssignment {
  AssignmentSpec spec;
  /// True when rho0 -> rho is not one-to-one and the spec is a least-squares fit.
  bool degenerate = false;
  /// Smallest singular value of the superoperator of rho0 -> rho.
  double min_singular_value = 0.0;
};

/// Effective assignment rho -> tau induced by tau = V (rho0 (x) omega0) V^dagger
/// with rho = tr_B tau. When rho0 -> rho is invertible the spec reproduces tau
/// exactly from rho; otherwise the general affine form is fitted by least
/// squares over a tomographic basis of rho0 and `degenerate` is set.
EffectiveAssignment effective_assignment_from_unitary(const UnitaryOperator& v,
                                                      const DensityMatrix& omega0);

/// rho (x) f(rho). Followed by SWAP and tr_B this realizes rho -> f(rho) for
/// any f, linear or not.
Matrix swap_gadget_extension(const DensityMatrix& rho,
                             const std::function<Matrix(const DensityMatrix&)>& f);

}  // namespace noncp
