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

// Two settings with non-CP reduced dynamics: dynamical decoupling, where a
// pulse P anticommuting with the coupling reverses the joint evolution, and
// channels assisted by a measurement of the environment output.
#pragma once

#include <vector>

#include "noncp/choi.hpp"

namespace noncp {

// ---------------------------------------------------------------- decoupling

/// Joint Hamiltonian g H_AB with an instantaneous pulse P. P must satisfy
/// P H_AB P^dagger = -H_AB; the constructor raises ContractViolation otherwise.
class DecouplingModel {
 public:
  DecouplingModel(HermitianOperator h_ab, UnitaryOperator p, double g, double t,
                  BipartiteDims dims);

  /// H_AB = sigma_z (x) sigma_x, P = sigma_x (x) 1.
  static DecouplingModel spin_echo(double g, double t);

  const HermitianOperator& h_ab() const { return h_; }
  const UnitaryOperator& pulse() const { return p_; }
  double g() const { return g_; }
  double t() const { return t_; }
  BipartiteDims dims() const { return dims_; }
  /// exp(-i g H_AB t).
  UnitaryOperator evolution() const;

 private:
  HermitianOperator h_;
  UnitaryOperator p_;
  double g_;
  double t_;
  BipartiteDims dims_;
};

/// max |P H P^dagger + H|.
double anticommutator_defect(const Matrix& p, const Matrix& h);

/// Evolve rho (x) omega for t, apply P, evolve for t, apply P^dagger and
/// return the reduced state of A.
Matrix decoupling_sequence(const DecouplingModel& model, const DensityMatrix& rho,
                           const DensityMatrix& omega);

/// Same pulse sequence without the anticommutation check. Used to show that
/// the reversal fails for a pulse that does not anticommute with H.
Matrix pulse_sequence_unchecked(const Matrix& h, const Matrix& p, double g, double t,
                                const DensityMatrix& rho, const DensityMatrix& omega,
                                BipartiteDims dims);

/// Extended generator list {1, s_1, ..., s_{d^2-1}}.
std::vector<Matrix> extended_basis(Index d);

/// U (s_mu (x) s_nu) U^dagger = sum s^{mu nu}_{kappa rho} s_kappa (x) s_rho over
/// extended bases (index 0 is the identity).
class HeisenbergTransfer {
 public:
  HeisenbergTransfer(BipartiteDims dims, RealMatrix s) : dims_(dims), s_(std::move(s)) {}

  BipartiteDims dims() const { return dims_; }
  /// Square matrix with row kappa * n_B + rho and column mu * n_B + nu,
  /// n_B = d_B^2.
  const RealMatrix& matrix() const { return s_; }
  double operator()(Index mu, Index nu, Index kappa, Index rho) const {
    const Index nb = dims_.b * dims_.b;
    return s_(kappa * nb + rho, mu * nb + nu);
  }
  /// sum_{kappa rho} s^{mu nu}_{kappa rho} s_kappa (x) s_rho.
  Matrix reconstruct(Index mu, Index nu) const;

 private:
  BipartiteDims dims_;
  RealMatrix s_;
};

HeisenbergTransfer heisenberg_transfer(const UnitaryOperator& u, BipartiteDims dims);

struct RecoveryMap {
  ChoiMatrix choi;
  double min_eigenvalue = 0.0;
  bool non_cp = false;
  /// Bloch matrix K_ji = tr(s_j Phi_t(s_i)) / 2 of the forward map.
  RealMatrix contraction;
  /// Bloch offset of the forward map; zero for omega = 1 / d_B.
  RealVector offset;
};

/// Inverse of the forward reduced map rho(0) -> rho(t) at the model's t,
/// extended linearly to all operators. Raises RankDeficient when K is
/// singular (complete decoherence of some Bloch direction).
RecoveryMap recovery_map_choi(const DecouplingModel& model, const DensityMatrix& omega);
RecoveryMap recovery_map_choi(const DecouplingModel& model);

/// ||Phi(rho1) - Phi(rho2)||_1 / ||rho1 - rho2||_1.
double distance_ratio(const ChoiMatrix& phi, const DensityMatrix& rho1,
                      const DensityMatrix& rho2);

// ---------------------------------------------------------- assisted channels

/// Isometry V: H_A -> H_B (x) H_C followed by a POVM {E_x} on C whose outcome
/// selects a recovery R_x on B, applied blockwise to n copies.
struct AssistedChannel {
  Matrix v;  // (d_B d_C) x d_A
  Index d_b = 0;
  Index d_c = 0;
  std::vector<Matrix> povm;
  std::vector<ChoiMatrix> recoveries;
  int n = 1;

  Index d_a() const { return v.cols(); }
  /// Raises ContractViolation for a non-isometric V, a POVM that is not PSD or
  /// does not sum to 1, a recovery that is not CP and TP, or a count mismatch.
  void validate() const;
  /// Same V with the trivial measurement {1} and recovery {identity}.
  AssistedChannel unassisted() const;
};

inline constexpr Index kMaxAssistedDim = 64;

/// Output on H_B^{(x) n} for an input on H_A^{(x) n}. Raises Unsupported when
/// (d_B d_C)^n exceeds kMaxAssistedDim and InvalidArgument for n outside {1, 2}.
Matrix assisted_transform(const AssistedChannel& ch, const DensityMatrix& input);
Matrix assisted_transform(const AssistedChannel& ch, const Vector& psi);

struct DistinguishabilityGain {
  double assisted = 0.0;
  double unassisted = 0.0;
  double gain = 0.0;
};

/// Trace distances tr|Phi(psi1) - Phi(psi2)| with and without assistance.
DistinguishabilityGain distinguishability_gain(const AssistedChannel& ch, const Vector& psi1,
                                               const Vector& psi2);

/// V|0> = |00>, V|1> = |11>; POVM {|+><+|, |-><-|} on C; recoveries
/// {identity, sigma_z}. The assisted map is the identity on the qubit.
AssistedChannel dephasing_copy_channel(int n = 1);

}  // namespace noncp
