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

// Dense complex linear algebra with validated quantum roles.
//
// Composite spaces use subsystem A as the slow (outer) index: basis state
// |a>|b> of H_A (x) H_B has flat index a * d_B + b. Every other module
// inherits this convention.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "noncp/errors.hpp"

namespace noncp {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

enum class Subsystem { A, B };

/// Dimensions of a bipartite space H_A (x) H_B.
struct BipartiteDims {
  Index a = 0;
  Index b = 0;
  Index total() const { return a * b; }
};

/// Largest absolute entry.
double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermiticityTol);
/// (M + M^dagger) / 2.
Matrix hermitian_part(const Matrix& m);

class HermitianOperator {
 public:
  /// Throws ContractViolation when max|H - H^dagger| exceeds tol (relative to
  /// max(1, max|H|)). The stored matrix is the exact Hermitian part.
  explicit HermitianOperator(const Matrix& m, double tol = kHermiticityTol);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

class DensityMatrix {
 public:
  /// Validates hermiticity, unit trace and min eigenvalue >= -1e-10.
  explicit DensityMatrix(const Matrix& m);

  static DensityMatrix maximally_mixed(Index d);
  static DensityMatrix pure(const Vector& ket);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

class UnitaryOperator {
 public:
  /// Validates max|U^dagger U - 1| <= tol.
  explicit UnitaryOperator(const Matrix& m, double tol = kUnitarityTol);

  static UnitaryOperator identity(Index d);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Traceless Hermitian generators of SU(d), normalized tr(s_i s_j) = 2 delta_ij.
class GeneratorBasis {
 public:
  explicit GeneratorBasis(Index d, std::vector<Matrix> sigmas)
      : d_(d), sigmas_(std::move(sigmas)) {}

  Index dim() const { return d_; }
  Index size() const { return static_cast<Index>(sigmas_.size()); }
  const Matrix& operator[](Index i) const { return sigmas_[static_cast<std::size_t>(i)]; }
  auto begin() const { return sigmas_.begin(); }
  auto end() const { return sigmas_.end(); }

  /// sum_i x_i sigma_i.
  Matrix combine(const RealVector& x) const;
  /// x_i = tr(sigma_i X) / 2, so combine(coefficients(X)) = X for traceless X.
  RealVector coefficients(const Matrix& x) const;
  /// Generalized Bloch vector alpha_i = (d/2) tr(sigma_i rho).
  RealVector bloch(const Matrix& rho) const;
  /// (1 + sum_i alpha_i sigma_i) / d; inverse of bloch() on unit-trace operators.
  Matrix from_bloch(const RealVector& alpha) const;

 private:
  Index d_;
  std::vector<Matrix> sigmas_;
};

/// Generalized Gell-Mann matrices: symmetric, antisymmetric, then diagonal.
/// For d = 2 this is exactly (sigma_x, sigma_y, sigma_z).
GeneratorBasis generator_basis(Index d);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

Matrix identity(Index d);

/// Kronecker product; (a, b) maps to a * rows(B) + b.
Matrix tensor(const Matrix& a, const Matrix& b);

/// Partial trace over the subsystem that is not kept.
Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem keep);

/// Partial transpose of the given subsystem.
Matrix partial_transpose(const Matrix& m, BipartiteDims dims, Subsystem which);

/// Unitary exchanging the factors: SWAP (x (x) y) SWAP^dagger = y (x) x.
Matrix swap_operator(Index d_a, Index d_b);

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
/// solving; inputs farther than tol from Hermitian raise ContractViolation.
EigenSystem eig_hermitian(const Matrix& h, double tol = 1e-9);
EigenSystem eig_hermitian(const HermitianOperator& h);
RealVector eigenvalues_hermitian(const Matrix& h, double tol = 1e-9);
double min_eigenvalue(const Matrix& h, double tol = 1e-9);

/// exp(-i H t).
UnitaryOperator unitary_evolve(const HermitianOperator& h, double t);

/// sum |lambda| for a Hermitian matrix.
double trace_norm(const Matrix& h);
/// tr |rho1 - rho2| (no factor 1/2).
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Row-major vectorization: entry (m, s) goes to m * cols + s.
Vector vec_rows(const Matrix& m);
Matrix unvec_rows(const Vector& v, Index rows, Index cols);

// Random sampling helpers used by the property suites and demos.
Matrix random_ginibre(Index rows, Index cols, Rng& rng);
UnitaryOperator random_unitary(Index d, Rng& rng);
HermitianOperator random_hermitian(Index d, Rng& rng);
/// Random mixed state of the given rank (full rank when rank <= 0).
DensityMatrix random_density(Index d, Rng& rng, Index rank = 0);

}  // namespace noncp
