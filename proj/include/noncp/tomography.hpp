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

// Process tomography on simulated data: linear inversion, projection onto
// CPTP maps by alternating projections, and comparison of fit templates.
//
// All inputs have unit trace, so a map rho -> L(rho) + c is indistinguishable
// from the linear map rho -> L(rho) + c tr(rho). Linear inversion therefore
// reproduces affine data exactly; the affine template differs only in how the
// result is split into a CP part and a shift.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "noncp/accessibility.hpp"
#include "noncp/choi.hpp"

namespace noncp {

enum class FitModel { linear_cp, linear_unconstrained, difference_form, affine_with_shift };
std::string to_string(FitModel m);

struct TomographyRecord {
  Index d_in = 0;
  Index d_out = 0;
  std::vector<Matrix> inputs;
  std::vector<Matrix> outputs;
  /// Shots per measured generator; empty for exact outputs.
  std::optional<std::int64_t> shots;
  std::uint64_t seed = 0;
};

struct FitResult {
  ChoiMatrix choi;
  /// Max trace-norm misfit over the record's inputs.
  double residual = 0.0;
  FitModel model = FitModel::linear_unconstrained;
  double min_eigenvalue = 0.0;
  /// Shift of the affine template (empty otherwise).
  RealVector xi;
  /// Attached to a non-CP unconstrained fit by template_comparison.
  std::optional<DifferenceForm> difference;
  std::string note;
};

using MapEvaluator = std::function<Matrix(const Matrix&)>;

/// 1/d and (1 + c_i s_i)/d with c_i the largest value keeping the state PSD;
/// for qubits these are the +1 eigenstates of the Pauli matrices.
std::vector<DensityMatrix> tomographic_inputs(Index d);

/// Exact outputs, or estimates from `shots` samples of each generator
/// measured in its eigenbasis. Small negative outcome probabilities (possible
/// for non-positive truths) are clipped to zero. Reproducible for a seed.
TomographyRecord simulate_tomography(const MapEvaluator& truth,
                                     const std::vector<DensityMatrix>& inputs, Index d_out,
                                     std::optional<std::int64_t> shots = {},
                                     std::uint64_t seed = 0);

/// Max over the record of ||Phi_D(in) - out||_1.
double fit_residual(const TomographyRecord& rec, const ChoiMatrix& d);

/// Least-squares linear map. Throws RankDeficient for incomplete inputs.
FitResult linear_inversion(const TomographyRecord& rec);

struct AffineFitConfig {
  /// Replace the Kraus part by its CPTP projection so the template is
  /// physical even when no shift makes it CP.
  bool enforce_cp = false;
  AccessibilityConfig access;
};

/// Linear map plus constant shift. The shift is zero when the linear fit is
/// already CP and otherwise the maximizer of lambda_min(L(xi)).
FitResult fit_affine(const TomographyRecord& rec, const AffineFitConfig& config = {});

struct ProjectionResult {
  ChoiMatrix choi;
  int iterations = 0;
  bool converged = false;
  /// Frobenius distance to the input.
  double distance = 0.0;
};

/// Dykstra alternating projections between the PSD cone and the
/// trace-preserving subspace. A final mix with the completely depolarizing
/// map removes any residual negative eigenvalue without breaking TP.
ProjectionResult project_to_cptp(const ChoiMatrix& d, int max_iter = 20000, double tol = 1e-12);

struct TemplateConfig {
  /// Templates with residual at or below this are accepted and ordered by
  /// parsimony (linear-cp, affine-with-shift, linear-unconstrained).
  double accept_threshold = 1e-4;
  AccessibilityConfig access;
};

/// Fits linear-cp, affine-with-shift and linear-unconstrained templates and
/// ranks them: accepted fits first by parsimony, then the rest by residual.
std::vector<FitResult> template_comparison(const TomographyRecord& rec,
                                           const TemplateConfig& config = {});

}  // namespace noncp
