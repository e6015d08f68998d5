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

// Maximization of the smallest eigenvalue of an affine Hermitian pencil
//   f(x) = lambda_min(A_0 - sum_i x_i A_i).
// f is concave and nonsmooth where the minimal eigenvalue is degenerate. The
// solver maximizes the log-sum-exp smoothing
//   f_mu(x) = -mu log sum_k exp(-lambda_k(x) / mu)
// by BFGS while driving mu to zero, and falls back to a Nelder-Mead simplex on
// the exact objective when the smooth stages stall.

#pragma once

#include <string>
#include <vector>

#include "noncp/linalg.hpp"

namespace noncp {

struct SpectralOptConfig {
  int max_iterations_per_stage = 400;
  /// Smoothing schedule, relative to the spectral scale of A_0.
  double mu_start = 1e-1;
  double mu_end = 1e-13;
  double mu_factor = 0.1;
  /// Stage termination on the smoothed gradient norm.
  double gradient_tol = 1e-11;
  bool simplex_fallback = true;
  int simplex_max_iterations = 20000;
  /// Eigenvalues within tie_tol of the minimum count as degenerate.
  double tie_tol = 1e-9;
};

struct SpectralOptResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool used_simplex = false;
  std::string message;
};

class MinEigenvalueObjective {
 public:
  MinEigenvalueObjective(Matrix base, std::vector<Matrix> directions);

  Index dimension() const { return static_cast<Index>(directions_.size()); }
  /// A_0 - sum_i x_i A_i.
  Matrix pencil(const RealVector& x) const;
  double value(const RealVector& x) const;
  /// Element of the Clarke subdifferential: -v^dagger A_i v averaged over an
  /// orthonormal basis of the (near-)minimal eigenspace.
  RealVector subgradient(const RealVector& x, double tie_tol = 1e-9) const;
  /// Smoothed objective f_mu(x); fills grad when non-null.
  double smoothed(const RealVector& x, double mu, RealVector* grad) const;
  /// max |lambda(A_0)|, used to scale the smoothing schedule.
  double spectral_scale() const { return scale_; }

 private:
  Matrix base_;
  std::vector<Matrix> directions_;
  double scale_ = 1.0;
};

SpectralOptResult maximize_min_eigenvalue(const MinEigenvalueObjective& objective,
                                          const RealVector& x0,
                                          const SpectralOptConfig& config = {});

}  // namespace noncp
