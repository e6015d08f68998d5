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

// Reduction of an embedded unitary evolution to the affine form
//   Phi(rho) = sum_a M_a rho M_a^dagger + xi . sigma,
// and the two-qubit rotation example built on the toy extension.

#pragma once

#include <vector>

#include "noncp/choi.hpp"
#include "noncp/fano.hpp"

namespace noncp {

/// Traceless shift tr_B[U (sum_ij Gamma_ij s_i (x) s_j) U^dagger].
Matrix correlation_shift(const UnitaryOperator& u, const CorrelationTensor& corr,
                         BipartiteDims dims);

/// Affine form of rho -> tr_B[U tau U^dagger] where tau has environment
/// marginal omega and correlation tensor corr. The Kraus part comes from the
/// spectral decomposition of omega; xi from projecting the correlation shift
/// onto the generators of A.
AffineMapForm reduced_affine_form(const UnitaryOperator& u, const DensityMatrix& omega,
                                  const CorrelationTensor& corr);

/// Two-qubit rotation by theta in the {|01>, |10>} block.
UnitaryOperator example_unitary(double theta);

/// Closed-form shift (0, 0, a sin(2 theta) / 2) of the rotation example.
RealVector example_xi(double a, double theta);

/// Gamma = (a / 4) 1_3, the correlation tensor of the toy extension.
CorrelationTensor toy_correlation(double a);

/// D(theta; a): dynamical matrix of the rotation example with omega = 1/2.
ChoiMatrix toy_dynamical_matrix(double a, double theta);

struct SpectrumRow {
  double theta = 0.0;
  RealVector eigenvalues;  // ascending
  double xi_z = 0.0;
};

/// Eigenvalues of D(theta; a) over the grid. Rows are in grid order.
std::vector<SpectrumRow> spectrum_sweep(double a, const std::vector<double>& thetas);

/// `points` equally spaced values covering [0, 2 pi] inclusive.
std::vector<double> theta_grid(int points = 201);

/// Gamma_ij = (g_ij + sum_k (G_ijk - delta_ik b_j) alpha_k
///             - sum_k B_jk alpha_i alpha_k) / (d_A d_B).
CorrelationTensor quadratic_gamma(const AssignmentSpec& spec, const RealVector& alpha);

struct PptResult {
  bool ppt = false;
  double min_pt_eigenvalue = 0.0;
  /// PPT is equivalent to separability only for 2x2 and 2x3 systems.
  bool decides_separability = false;
};

PptResult ppt_check(const Matrix& tau, BipartiteDims dims = {2, 2});

}  // namespace noncp
