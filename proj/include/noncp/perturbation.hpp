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

// Weak coupling and weak initial correlations.
//
// The joint state is produced by a perturbed assignment around rho (x) omega0
// and evolved by U_AB = exp(-i t [H_A (x) 1 + eta H_int]). To first order in
// eps and eta the reduced map is the Kraus map
//   M_{mu nu} = sqrt(p_nu) <mu| U_AB(0) + eta dU_AB/deta |nu>
// in the eigenbasis {|nu>, p_nu} of omega0.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noncp/choi.hpp"
#include "noncp/fano.hpp"

namespace noncp {

class WeakCouplingModel {
 public:
  /// Checks dimensions, that omega0 is full rank and has no repeated
  /// eigenvalue, and that the base assignment has environment dimension d_B.
  WeakCouplingModel(HermitianOperator h_a, HermitianOperator h_int, double eta,
                    DensityMatrix omega0, PerturbedAssignment assignment, double t);

  const HermitianOperator& h_a() const { return h_a_; }
  const HermitianOperator& h_int() const { return h_int_; }
  double eta() const { return eta_; }
  const DensityMatrix& omega0() const { return omega0_; }
  const PerturbedAssignment& assignment() const { return assignment_; }
  double t() const { return t_; }
  BipartiteDims dims() const { return {h_a_.dim(), omega0_.dim()}; }

  /// exp(-i t [H_A (x) 1 + eta H_int]).
  UnitaryOperator joint_unitary(double eta) const;

 private:
  HermitianOperator h_a_;
  HermitianOperator h_int_;
  double eta_;
  DensityMatrix omega0_;
  PerturbedAssignment assignment_;
  double t_;
};

/// Unit-strength model data; scaled() fixes eps and eta.
struct WeakCouplingTemplate {
  Index d_a = 2;
  Index d_b = 2;
  Matrix h_a;
  Matrix h_int;
  Matrix omega0;
  double t = 1.0;
  /// Linear part of the assignment. Defaults to the product assignment of
  /// omega0 when empty (d_a == 0).
  AssignmentSpec base;
  std::function<RealVector(const RealVector&)> beta1;
  std::function<RealMatrix(const RealVector&)> gamma1;

  WeakCouplingModel scaled(double epsilon, double eta) const;
  AssignmentSpec linear_part() const;
};

/// Random template: H_A = sum h_i s_i, H_int = sum h_ij s_i (x) s_j with
/// coefficients in [-1, 1], omega0 = (1 + b0 . s) / d_B with |b0| <= 0.3, and
/// quadratic beta1, gamma1 with coefficients in [-1, 1].
WeakCouplingTemplate random_weak_coupling_template(Index d_a, Index d_b, Rng& rng);

struct EvolutionOutput {
  Matrix rho;
  /// Positivity of the assigned joint state; outputs are still computed
  /// when it fails.
  bool tau_positive = false;
  double tau_min_eigenvalue = 0.0;
};

EvolutionOutput evolve_exact(const WeakCouplingModel& model, const DensityMatrix& rho);

/// dU_AB/deta at eta = 0 by a central difference with step h.
Matrix coupling_derivative(const WeakCouplingModel& model, double h = 1e-5);

/// First-order Kraus set described in the header comment.
KrausSet first_order_kraus(const WeakCouplingModel& model);
Matrix first_order_prediction(const WeakCouplingModel& model, const DensityMatrix& rho);

/// 1/d together with (1 +- c s_i)/d for every generator s_i. The set is
/// overcomplete so a linear fit leaves a measurable residual for nonlinear
/// maps.
std::vector<DensityMatrix> interior_probes(Index d, double c = 0.5);

struct NoncpMetrics {
  double noncp = 0.0;
  double nonlin = 0.0;
  double shift = 0.0;
  /// Least-squares linear fit to the probe data.
  Matrix choi_fit;
  bool tau_positive = true;
};

/// Fits a linear map to (probe, evolve_exact(probe)) pairs.
/// noncp = max(0, -lambda_min(D_fit)); nonlin = max trace-norm residual;
/// shift = max |xi| of tr_B[U (tau - tr_B tau (x) tr_A tau) U^dagger].
/// Throws RankDeficient when the probes do not span the operator space.
NoncpMetrics noncp_magnitude(const WeakCouplingModel& model,
                             const std::vector<DensityMatrix>& probes);

struct ScalePoint {
  double s = 0.0;
  double epsilon = 0.0;  // effective eps after positivity shrinking
  double eta = 0.0;
  NoncpMetrics metrics;
};

struct ScalingScan {
  std::vector<ScalePoint> points;
};

enum class ScalingStatus { fitted, machine_precision, not_applicable };
std::string to_string(ScalingStatus s);

struct ScalingResult {
  ScalingStatus status = ScalingStatus::fitted;
  std::optional<double> slope;
  ScalingScan scan;
  std::string message;
};

inline constexpr double kScalingFloor = 1e-14;

/// Runs eps = eta = s over s_values and fits the slope of
/// log(noncp + nonlin + floor) against log(s). eps is halved at each scale
/// until every probe's joint state is positive. Needs at least 4 scales
/// spanning 2 decades (InvalidArgument otherwise). Templates whose linear part
/// carries constant correlations or an alpha-dependent environment are
/// reported as not_applicable without scanning.
ScalingResult scaling_exponent(const WeakCouplingTemplate& tmpl,
                               const std::vector<double>& s_values);

/// n points log-spaced from hi down to lo inclusive.
std::vector<double> geometric_grid(double hi, double lo, int n);

}  // namespace noncp
