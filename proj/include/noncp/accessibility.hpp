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

// Linear accessibility: a trace-preserving map with dynamical matrix D admits
// an affine form with CP trace-preserving part only if
//   L(xi) = D - (xi . sigma) (x) 1
// is positive semidefinite for some real xi. The test maximizes
// lambda_min(L(xi)), a concave function of xi.

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "noncp/choi.hpp"
#include "noncp/spectral_opt.hpp"

namespace noncp {

enum class AccessStatus { accessible, not_accessible, boundary };

std::string to_string(AccessStatus s);

struct AccessibilityConfig {
  /// Accessible when max lambda_min >= -tol; not accessible below -10 tol.
  double tol = 1e-7;
  SpectralOptConfig optimizer;
  /// Starting shift; zero when empty.
  RealVector xi0;
};

struct AccessibilityReport {
  AccessStatus status = AccessStatus::boundary;
  RealVector xi_star;
  double lambda_min_star = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Kraus decomposition of L(xi_star); present only when accessible.
  std::optional<KrausSet> certificate;
  std::string diagnostics;
};

/// L(xi) = D - (xi . sigma) (x) 1_in.
ChoiMatrix shifted_choi(const ChoiMatrix& d, const RealVector& xi);

AccessibilityReport linear_accessibility_test(const ChoiMatrix& d,
                                              const AccessibilityConfig& config = {});

/// -sqrt(1 + |xi|^2): smallest eigenvalue of L(xi) for the qubit transpose.
double transpose_lambda_min(const RealVector& xi);

/// p * (rho -> 1/2) + (1 - p) * transpose, on a qubit.
ChoiMatrix tprime_choi(double p);

/// Bisection for the parameter where a one-parameter family changes
/// accessibility status. Returns nullopt when both ends agree.
std::optional<double> accessibility_threshold(const std::function<ChoiMatrix(double)>& family,
                                              double lo, double hi, double tol = 1e-9,
                                              const AccessibilityConfig& config = {});

struct UnitalCpResult {
  bool unital = false;
  bool cp_forced = false;
  double min_eigenvalue = 0.0;
};

/// For a state-independent affine form: reports whether Phi(1/d) = 1/d and,
/// if so, whether the dynamical matrix is PSD. A unital form whose dynamical
/// matrix is not PSD raises ContractViolation.
UnitalCpResult unital_cp_check(const AffineMapForm& f, double tol = 1e-9);

}  // namespace noncp
